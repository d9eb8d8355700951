// Copyright 2026 The ldpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
// criterion fails. All seeds are fixed constants.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ldpq/core.h"
#include "ldpq/hadamard.h"
#include "ldpq/harness.h"
#include "ldpq/json_io.h"
#include "ldpq/projection.h"
#include "ldpq/protocols.h"
#include "ldpq/random.h"
#include "ldpq/randomizers.h"
#include "oracles.h"

namespace ldpq {
namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds;
  std::function<Outcome()> run;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

QueryMatrix RandomMatrix(int d, int J, Rng& rng, bool unit = false) {
  std::vector<std::vector<double>> cols(J, std::vector<double>(d));
  for (auto& col : cols) {
    double norm = 0.0;
    for (double& x : col) norm += (x = StandardNormal(rng)) * x;
    const double scale = (unit ? 1.0 : Uniform01(rng)) / std::sqrt(norm);
    for (double& x : col) x *= scale;
  }
  return QueryMatrix::FromColumns(cols, 1.0);
}

std::vector<double> RandomSimplexPoint(int J, Rng& rng) {
  std::vector<double> p(J);
  double total = 0.0;
  for (double& x : p) total += (x = -std::log(1.0 - Uniform01(rng)));
  for (double& x : p) x /= total;
  return p;
}

Outcome ExactLdpAudits() {
  Outcome out;
  double worst_excess = -1e9;
  int audits = 0;
  for (double eps : {0.1, 0.5, 1.0, 2.0}) {
    for (double r : {1.0, 5.0}) {
      for (int J : {2, 8}) {
        AuditParams params;
        params.epsilon = eps;
        params.r = r;
        params.J = J;
        params.queries = 20;
        params.seed = kSeed;
        const AuditReport report = RunAudit(AuditKind::kAdaptiveRr, params);
        out.pass = out.pass && report.pass;
        worst_excess = std::max(worst_excess, report.measured - eps);
        audits += params.queries;
      }
    }
  }
  for (double eps : {0.1, 0.5, 1.0}) {
    for (int J : {3, 7, 15}) {
      AuditParams params;
      params.epsilon = eps;
      params.J = J;
      const AuditReport report = RunAudit(AuditKind::kHadamardRr, params);
      out.pass = out.pass && report.pass;
      worst_excess = std::max(worst_excess, report.measured - eps);
      ++audits;
    }
  }
  out.detail = Fmt("%d channels audited, max(loss - eps) = %.3g", audits, worst_excess);
  return out;
}

Outcome RejectionBitAudit() {
  Outcome out;
  double worst_margin = 1e9, worst_quad = 0.0;
  for (double eps : {0.25, 0.5, 1.0}) {
    for (std::size_t n : {std::size_t{200}, std::size_t{10000}}) {
      AuditParams params;
      params.epsilon = eps;
      params.J = 2;
      params.n = n;
      const AuditReport report = RunAudit(AuditKind::kRejSampBit, params);
      out.pass = out.pass && report.pass;
      worst_margin = std::min(worst_margin, eps - report.measured);
      // Quadrature against the closed form for the two columns +-1.
      const double sigma2 = RejSampSigma2(1.0, eps, n);
      const double sigma = std::sqrt(sigma2);
      for (double a : {-1.0, 1.0}) {
        const double hw = eps * sigma2 / (4.0 * std::abs(a));
        const double exact = 0.5 * (NormalCdf((a / 2 + hw - a) / sigma) -
                                    NormalCdf((a / 2 - hw - a) / sigma));
        const double quad = RejSampAcceptanceByQuadrature(a, sigma2, eps);
        worst_quad = std::max(worst_quad, std::abs(quad - exact));
      }
    }
  }
  out.pass = out.pass && worst_quad <= 1e-8;
  out.detail = Fmt("min(eps - loss) = %.4f, quadrature error = %.2g",
                   worst_margin, worst_quad);
  return out;
}

Outcome HadamardUnbiasedness() {
  Outcome out;
  Rng rng = MakeRng(kSeed);
  double worst = 0.0;
  for (int J : {3, 7}) {
    for (double eps : {0.5, 1.0}) {
      const HadamardChannel channel(J, eps);
      const HadamardContext ctx = HadamardContext::Create(J, eps);
      for (int t = 0; t < 5; ++t) {
        const auto p = RandomSimplexPoint(J, rng);
        std::vector<double> q(ctx.Jt, 0.0);
        for (int v = 1; v <= J; ++v) {
          for (int o = 0; o < ctx.Jt; ++o) q[o] += p[v - 1] * channel.Probability(v, o);
        }
        const auto transformed = Fwht(q);
        const auto oracle = testing::ExpectedHadamardDecode(p, eps);
        for (int v = 1; v <= J; ++v) {
          worst = std::max(worst, std::abs(ctx.c_eps * transformed[v] - p[v - 1]));
          worst = std::max(worst, std::abs(oracle[v - 1] - p[v - 1]));
        }
      }
    }
  }
  out.pass = worst <= 1e-12;
  out.detail = Fmt("max |E[p_bar] - p| = %.2g", worst);
  return out;
}

Outcome FwhtMatchesNaive() {
  Outcome out;
  Rng rng = MakeRng(kSeed);
  double worst = 0.0;
  for (int Jt = 2; Jt <= 1024; Jt *= 2) {
    std::vector<double> x(Jt);
    for (double& v : x) v = 2.0 * Uniform01(rng) - 1.0;
    const auto fast = Fwht(x);
    for (int i = 1; i <= Jt; ++i) {
      double naive = 0.0;
      for (int j = 1; j <= Jt; ++j) naive += HadamardEntry(i, j, Jt) * x[j - 1];
      worst = std::max(worst, std::abs(naive - fast[i - 1]));
    }
  }
  out.pass = worst <= 1e-12;
  out.detail = Fmt("max entry error = %.2g over Jt = 2..1024", worst);
  return out;
}

Outcome ProjectionOracles() {
  Outcome out;
  Rng rng = MakeRng(kSeed);
  double simplex_worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int J = 2 + static_cast<int>(rng() % 9);
    std::vector<double> u(J);
    for (double& x : u) x = StandardNormal(rng);
    const auto oracle = testing::SimplexProjectionByKkt(u);
    const auto x = ProjectSimplex(u);
    if (oracle.size() != x.size()) {
      out.pass = false;
      continue;
    }
    for (int j = 0; j < J; ++j) simplex_worst = std::max(simplex_worst, std::abs(x[j] - oracle[j]));
  }
  double poly_worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int J = 2 + static_cast<int>(rng() % 5);
    const QueryMatrix A = RandomMatrix(d, J, rng);
    std::vector<double> target(d);
    for (double& x : target) x = StandardNormal(rng);
    const PolytopeProjection p = ProjectPolytope(PolytopeSpec::For(A), target);
    double obj = 0.0;
    for (int i = 0; i < d; ++i) obj += (p.point[i] - target[i]) * (p.point[i] - target[i]);
    poly_worst = std::max(poly_worst, std::abs(obj - testing::PolytopeObjectiveByFaces(A, target)));
  }
  out.pass = out.pass && simplex_worst <= 1e-9 && poly_worst <= 1e-6;
  out.detail = Fmt("simplex max error = %.2g, polytope objective error = %.2g",
                   simplex_worst, poly_worst);
  return out;
}

Outcome ProjectionFact() {
  Outcome out;
  Rng rng = MakeRng(kSeed);
  double worst = -1e9;
  for (int t = 0; t < 200; ++t) {
    const QueryMatrix A = RandomMatrix(5, 12, rng);
    const PolytopeSpec spec = PolytopeSpec::For(A);
    std::vector<double> coeffs(12);
    double l1 = 0.0;
    for (double& c : coeffs) l1 += std::abs(c = StandardNormal(rng));
    const double scale = Uniform01(rng) / l1;
    for (double& c : coeffs) c *= scale;
    std::vector<double> noise(5);
    const double level = std::pow(10.0, -3.0 + 3.0 * Uniform01(rng));
    for (double& z : noise) z = level * StandardNormal(rng);
    const ProjectionBoundCheck check = ProjectionErrorBoundCheck(spec, coeffs, noise);
    const double excess = check.lhs - (check.rhs + 4.0 * spec.tolerance);
    worst = std::max(worst, excess);
    out.pass = out.pass && excess <= 0.0;
  }
  out.detail = Fmt("max(lhs - rhs - 4 tol) = %.3g over 200 instances", worst);
  return out;
}

Outcome ActiveUsers() {
  Outcome out;
  Rng rng = MakeRng(kSeed);
  const QueryMatrix A = RandomMatrix(5, 20, rng, true);
  const Distribution p = Distribution::Create(std::vector<double>(20, 0.05));
  const std::size_t n = 1000;
  std::size_t min_active = n;
  double mean = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng data_rng = MakeRng(DeriveSeed(kSeed, t));
    const Dataset data = SampleDataset(p, n, data_rng);
    const OfflineRunResult r = RunRejSamp(A, data, 1.0, DeriveSeed(kSeed + 1, t));
    min_active = std::min(min_active, r.active_users);
    mean += static_cast<double>(r.active_users) / n / 200.0;
  }
  out.pass = min_active > n / 4 && mean >= 3.0 / 8.0 - 0.02;
  out.detail = Fmt("min n_hat = %zu (> 250), mean n_hat/n = %.4f (>= 0.355)",
                   min_active, mean);
  return out;
}

Outcome ConditionalLaw() {
  Outcome out;
  const QueryMatrix A = QueryMatrix::FromRows({{1.0, -1.0}}, 1.0);
  const double eps = 1.0;
  const std::size_t n = 1000;
  const std::size_t samples = 100000;
  const double sigma2 = RejSampSigma2(1.0, eps, n);
  const std::vector<double> a = {1.0};

  Rng rej = MakeRng(DeriveSeed(kSeed, std::uint64_t{1}));
  std::vector<double> accepted;
  accepted.reserve(samples);
  while (accepted.size() < samples) {
    const RejSampReport r = RandomizeRejSamp(A, 1, eps, n, rej);
    if (!r.dropped()) accepted.push_back((*r.vector)[0]);
  }
  Rng gauss = MakeRng(DeriveSeed(kSeed, std::uint64_t{2}));
  std::vector<double> restricted;
  restricted.reserve(samples);
  while (restricted.size() < samples) {
    const GaussianReport g = RandomizeGaussianWithSigma2(A, 1, sigma2, gauss);
    if (InAcceptanceWindow(RejSampLogTwiceEta(a, g.vector, sigma2), eps)) {
      restricted.push_back(g.vector[0]);
    }
  }
  const double ks = testing::KolmogorovSmirnov(accepted, restricted);
  out.pass = ks < 0.02;
  out.detail = Fmt("KS statistic = %.4f on 1e5 vs 1e5 samples", ks);
  return out;
}

ExperimentConfig BoundConfig(Protocol protocol) {
  ExperimentConfig c;
  c.protocol = protocol;
  c.trials = 50;
  c.seed = kSeed;
  c.r = 1.0;
  c.epsilon = 1.0;
  switch (protocol) {
    case Protocol::kGauss:
      c.delta = 1e-3;
      [[fallthrough]];
    case Protocol::kRejSamp:
      c.d = 50;
      c.J = 100;
      c.n = 2000;
      c.query_matrix = "random-unit-columns";
      break;
    case Protocol::kPhr:
      c.J = 1000;
      c.n = 10000;
      c.distribution = "zipf:1";
      break;
    case Protocol::kAdSamp:
      c.d = 10;
      c.J = 100;
      c.n = 50000;
      c.strategy = "tracking-adversary";
      break;
    case Protocol::kBaseline:
      break;
  }
  return c;
}

Outcome TheoremBounds() {
  Outcome out;
  std::string detail;
  for (Protocol p : {Protocol::kGauss, Protocol::kRejSamp, Protocol::kPhr,
                     Protocol::kAdSamp}) {
    const ExperimentResult r = RunExperiment(BoundConfig(p));
    out.pass = out.pass && r.bound_satisfied;
    detail += Fmt("%s%s %s mean %.4f %s bound %.4f", detail.empty() ? "" : "; ",
                  ProtocolName(p).c_str(), r.bound.metric.c_str(), r.checked_mean,
                  r.bound_satisfied ? "<=" : ">", r.bound.value);
  }
  out.detail = detail;
  return out;
}

Outcome SubgaussianTails() {
  Outcome out;
  const HadamardContext ctx = HadamardContext::Create(7, 1.0);
  const Distribution uniform = Distribution::Create(std::vector<double>(7, 1.0 / 7));
  const Distribution point = Distribution::Create({1, 0, 0, 0, 0, 0, 0});
  double worst_tail = 0.0, worst_var = 0.0;
  for (const Distribution& p : {uniform, point}) {
    const SubgaussianCheckResult r = SubgaussianCheck(ctx, p, 2000, 2000, kSeed);
    out.pass = out.pass && r.pass;
    for (double t : r.worst_tail_ratio) worst_tail = std::max(worst_tail, t);
    worst_var = std::max(worst_var, r.worst_variance_ratio);
  }
  out.detail = Fmt("worst tail ratio %.3f, worst variance ratio %.3f (limit %.3f)",
                   worst_tail, worst_var, 1.0 + 5.0 / std::sqrt(2000.0));
  return out;
}

Outcome SampleSplitting() {
  Outcome out;
  const Distribution p = Distribution::Create({0.1, 0.2, 0.3, 0.4});
  Rng rng = MakeRng(kSeed);
  const Dataset data = SampleDataset(p, 3000, rng);
  const QueryVector q = QueryVector::Create({1.0, -0.25, 0.5, -1.0}, 1.0);
  ConstantStrategy base_strategy(q);
  const AdaptiveTranscript base = RunAdSamp(data, 3, 1.0, 1.0, base_strategy, kSeed);
  int checked = 0;
  for (int k = 1; k <= 3; ++k) {
    std::vector<int> modified(data.inputs().begin(), data.inputs().end());
    for (std::size_t i = 0; i < modified.size(); ++i) {
      if (base.assignment[i] != k) modified[i] = modified[i] % 4 + 1;
    }
    ConstantStrategy strategy(q);
    const AdaptiveTranscript other =
        RunAdSamp(Dataset::Create(modified, 4), 3, 1.0, 1.0, strategy, kSeed);
    for (std::size_t i = 0; i < modified.size(); ++i) {
      if (base.assignment[i] != k) continue;
      ++checked;
      out.pass = out.pass &&
                 std::memcmp(&base.reports[i], &other.reports[i], sizeof(double)) == 0;
    }
    out.pass = out.pass && std::memcmp(&base.rounds[k - 1].estimate,
                                       &other.rounds[k - 1].estimate,
                                       sizeof(double)) == 0;
  }
  out.detail = Fmt("%d round-k reports compared byte-for-byte across d = 3 rounds", checked);
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Reproducibility() {
  namespace fs = std::filesystem;
  Outcome out;
  const fs::path dir = fs::temp_directory_path() / "ldpq_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  int runs = 0;
  for (Protocol p : {Protocol::kGauss, Protocol::kRejSamp, Protocol::kPhr,
                     Protocol::kAdSamp, Protocol::kBaseline}) {
    ExperimentConfig c;
    c.protocol = p;
    c.n = 800;
    c.J = 16;
    c.epsilon = 0.8;
    c.trials = 5;
    c.seed = 0x9e3779b97f4a7c15ULL;
    c.distribution = "two-spike";
    if (p == Protocol::kGauss) c.delta = 1e-4;
    if (p == Protocol::kGauss || p == Protocol::kRejSamp) {
      c.query_matrix = "random-unit-columns";
      c.d = 6;
    }
    if (p == Protocol::kAdSamp) c.d = 4;
    const std::string name = ProtocolName(p);
    c.output = (dir / (name + ".csv")).string();
    WriteExperimentOutputs(RunExperiment(c));

    ExperimentConfig rerun =
        ConfigFromJson(ReadJsonFile((dir / (name + ".json")).string()));
    rerun.output = (dir / (name + "_rerun.csv")).string();
    WriteExperimentOutputs(RunExperiment(rerun));
    out.pass = out.pass &&
               ReadFile(dir / (name + ".csv")) == ReadFile(dir / (name + "_rerun.csv"));
    ++runs;
  }
  fs::remove_all(dir);
  out.detail = Fmt("%d protocols re-run from their embedded configs", runs);
  return out;
}

}  // namespace
}  // namespace ldpq

int main() {
  using ldpq::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "exact LDP audits", 10, ldpq::ExactLdpAudits},
      {2, "rejection-bit audit", 5, ldpq::RejectionBitAudit},
      {3, "Hadamard-response unbiasedness", 1, ldpq::HadamardUnbiasedness},
      {4, "FWHT vs naive multiply", 2, ldpq::FwhtMatchesNaive},
      {5, "projection oracles", 30, ldpq::ProjectionOracles},
      {6, "projection error bound", 10, ldpq::ProjectionFact},
      {7, "active users", 30, ldpq::ActiveUsers},
      {8, "conditional law of accepted reports", 30, ldpq::ConditionalLaw},
      {9, "theorem bounds", 300, ldpq::TheoremBounds},
      {10, "sub-Gaussian tails", 60, ldpq::SubgaussianTails},
      {11, "sample-splitting independence", 1, ldpq::SampleSplitting},
      {12, "reproducibility", 60, ldpq::Reproducibility},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    ldpq::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.time_limit_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::printf("%s  criterion %2d  %-38s %s [%.2fs%s]\n", pass ? "PASS" : "FAIL",
                c.id, c.name.c_str(), outcome.detail.c_str(), seconds,
                in_time ? "" : " over time limit");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
