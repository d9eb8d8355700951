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

#include "ldpq/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#include "ldpq/hadamard.h"
#include "ldpq/json_io.h"
#include "ldpq/randomizers.h"

namespace ldpq {

using nlohmann::json;

namespace {

constexpr double kTwoSpikeGamma = 0.1;
constexpr std::size_t kRejSampMinUsers = 120;

bool StartsWith(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

bool IsOffline(Protocol p) {
  return p == Protocol::kGauss || p == Protocol::kRejSamp ||
         p == Protocol::kBaseline;
}

double ParseNumber(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " from \"" + text + "\"");
  }
}

void ValidateDistributionName(const std::string& name, int J) {
  if (name == "uniform" || name == "zipf" || name == "two-spike") return;
  if (StartsWith(name, "zipf:")) {
    const double s = ParseNumber(name.substr(5), "zipf exponent");
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("zipf exponent must be finite and >= 0");
    }
    return;
  }
  if (StartsWith(name, "point:")) {
    const double j = ParseNumber(name.substr(6), "point element");
    if (j != std::floor(j) || j < 1 || j > J) {
      throw ConfigError("point element must be an integer in [1, J]");
    }
    return;
  }
  if (StartsWith(name, "file:") && name.size() > 5) return;
  throw ConfigError("unknown distribution family \"" + name + "\"");
}

std::string FormatDouble(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

MetricSummary Summarize(const std::vector<TrialRecord>& trials,
                        double TrialRecord::*field) {
  MetricSummary s;
  if (trials.empty()) return s;
  CompensatedSum sum;
  for (const auto& t : trials) sum.Add(t.*field);
  s.mean = sum.Total() / static_cast<double>(trials.size());
  if (trials.size() > 1) {
    CompensatedSum sq;
    for (const auto& t : trials) {
      const double dev = t.*field - s.mean;
      sq.Add(dev * dev);
    }
    s.stddev = std::sqrt(sq.Total() / static_cast<double>(trials.size() - 1));
  }
  return s;
}

QueryVector ConstantQuery(const ExperimentConfig& config) {
  Rng rng = MakeRng(DeriveSeed(DeriveSeed(config.seed, StreamTag::kInstance),
                               StreamTag::kStrategy));
  std::vector<double> q(static_cast<std::size_t>(config.J));
  for (double& x : q) x = (rng() >> 63) ? config.r : -config.r;
  return QueryVector::Create(std::move(q), config.r);
}

std::unique_ptr<AdaptiveStrategy> MakeStrategy(const ExperimentConfig& config,
                                               const Distribution& p,
                                               std::uint64_t trial_seed) {
  if (config.strategy == "constant") {
    return std::make_unique<ConstantStrategy>(ConstantQuery(config));
  }
  if (config.strategy == "random") {
    return std::make_unique<RandomStrategy>(config.J, config.r, trial_seed);
  }
  return std::make_unique<TrackingAdversary>(p, config.r, trial_seed);
}

struct Instance {
  Distribution p;
  std::optional<QueryMatrix> A;
  std::vector<double> truth;  // A p for offline protocols
};

TrialRecord RunTrial(const ExperimentConfig& config, const Instance& inst,
                     std::size_t t, Execution exec) {
  const std::uint64_t trial_seed = DeriveSeed(config.seed, t);
  Rng data_rng = MakeRng(DeriveSeed(trial_seed, StreamTag::kDataset));
  const Dataset data = SampleDataset(inst.p, config.n, data_rng);
  const Histogram hist = ComputeHistogram(data, config.J);

  TrialRecord rec;
  rec.trial = t;
  if (IsOffline(config.protocol)) {
    const QueryMatrix& A = *inst.A;
    const std::vector<double> empirical = TrueAnswers(A, hist.masses());
    std::vector<double> estimate;
    switch (config.protocol) {
      case Protocol::kGauss: {
        OfflineRunResult run = RunGauss(
            A, data, PrivacyBudget::Create(config.epsilon, *config.delta),
            trial_seed, exec);
        estimate = std::move(run.estimate);
        rec.n_hat = run.active_users;
        rec.projected = run.projected;
        rec.gap = run.gap;
        rec.gap_exceeded = run.gap_exceeded;
        break;
      }
      case Protocol::kRejSamp: {
        OfflineRunResult run =
            RunRejSamp(A, data, config.epsilon, trial_seed, exec);
        estimate = std::move(run.estimate);
        rec.n_hat = run.active_users;
        rec.projected = run.projected;
        rec.gap = run.gap;
        rec.gap_exceeded = run.gap_exceeded;
        rec.regime_warning = run.outside_theorem_regime;
        break;
      }
      default:
        estimate = NonprivateBaseline(A, data);
        rec.n_hat = data.n();
        break;
    }
    rec.l2_vs_p = L2Error(estimate, inst.truth);
    rec.l2_vs_phat = L2Error(estimate, empirical);
    rec.linf = LinfError(estimate, inst.truth);
    return rec;
  }

  if (config.protocol == Protocol::kPhr) {
    PhrResult run = RunPhr(data, config.J, config.epsilon, trial_seed, exec);
    rec.l2_vs_p = L2Error(run.estimate.masses(), inst.p.masses());
    rec.l2_vs_phat = L2Error(run.estimate.masses(), hist.masses());
    rec.linf = LinfError(run.estimate.masses(), inst.p.masses());
    rec.n_hat = data.n();
    rec.projected = true;
    return rec;
  }

  auto strategy = MakeStrategy(config, inst.p, trial_seed);
  AdaptiveTranscript run = RunAdSamp(data, config.d, config.r, config.epsilon,
                                     *strategy, trial_seed, exec);
  std::vector<double> estimates, truth, empirical;
  rec.n_hat = std::numeric_limits<std::size_t>::max();
  for (const AdaptiveRound& round : run.rounds) {
    estimates.push_back(round.estimate);
    double tp = 0.0, te = 0.0;
    for (int v = 1; v <= config.J; ++v) {
      tp += round.query.at(v) * inst.p.mass(v);
      te += round.query.at(v) * hist.masses()[v - 1];
    }
    truth.push_back(tp);
    empirical.push_back(te);
    rec.n_hat = std::min(rec.n_hat, round.active_count);
    if (round.empty) rec.regime_warning = true;
  }
  rec.regime_warning = rec.regime_warning || run.outside_theorem_regime;
  rec.l2_vs_p = L2Error(estimates, truth);
  rec.l2_vs_phat = L2Error(estimates, empirical);
  rec.linf = LinfError(estimates, truth);
  return rec;
}

json Thresholds(const ExperimentConfig& config) {
  const double n = static_cast<double>(config.n);
  switch (config.protocol) {
    case Protocol::kGauss: {
      const double thr = GaussProjectionThreshold(
          config.d, config.J, PrivacyBudget::Create(config.epsilon, *config.delta));
      return json{{"projection_threshold", thr},
                  {"projection_rule", "project iff n < threshold"},
                  {"projects", n < thr},
                  {"sigma2", GaussianSigma2(config.r, PrivacyBudget::Create(
                                                          config.epsilon,
                                                          *config.delta))}};
    }
    case Protocol::kRejSamp:
      return json{{"projection_threshold",
                   RejSampProjectionThreshold(config.d, config.J, config.n,
                                              config.epsilon)},
                  {"projection_rule", "project iff n_hat < threshold"},
                  {"sigma2", RejSampSigma2(config.r, config.epsilon, config.n)},
                  {"theorem_min_n", kRejSampMinUsers}};
    case Protocol::kPhr:
      return json{{"padded_size", PaddedSize(config.J)},
                  {"c_eps", RrBiasConstant(config.epsilon)},
                  {"projection_rule", "always"}};
    case Protocol::kAdSamp:
      return json{{"theorem_min_n", 8.0 * config.d * std::log(n)},
                  {"c_eps", RrBiasConstant(config.epsilon)}};
    case Protocol::kBaseline:
      return json{{"r_over_sqrt_n", config.r / std::sqrt(n)}};
  }
  return json::object();
}

}  // namespace

std::string ProtocolName(Protocol p) {
  switch (p) {
    case Protocol::kGauss: return "gauss";
    case Protocol::kRejSamp: return "rejsamp";
    case Protocol::kPhr: return "phr";
    case Protocol::kAdSamp: return "adsamp";
    case Protocol::kBaseline: return "baseline";
  }
  return "unknown";
}

Protocol ParseProtocol(const std::string& name) {
  for (Protocol p : {Protocol::kGauss, Protocol::kRejSamp, Protocol::kPhr,
                     Protocol::kAdSamp, Protocol::kBaseline}) {
    if (ProtocolName(p) == name) return p;
  }
  throw ConfigError("unknown protocol \"" + name + "\"");
}

void ExperimentConfig::Validate() {
  if (n < 1) throw ConfigError("--n must be >= 1");
  if (trials < 1) throw ConfigError("--trials must be >= 1");
  if (J < 2) throw ConfigError("--J must be >= 2");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    if (protocol != Protocol::kBaseline) {
      throw ConfigError("--epsilon must be positive");
    }
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("--r must be positive");
  if (protocol == Protocol::kGauss) {
    if (!delta) throw ConfigError("gauss needs --delta");
    if (!(*delta > 0.0 && *delta < 1.0)) {
      throw ConfigError("--delta must lie in (0, 1)");
    }
  } else if (delta) {
    throw ConfigError("--delta applies to gauss only");
  }
  if (protocol == Protocol::kRejSamp) {
    if (epsilon > 1.0) {
      throw ConfigError("rejection-sampling protocol requires epsilon <= 1");
    }
    if (n < 2) throw ConfigError("rejsamp needs n >= 2");
  }
  ValidateDistributionName(distribution, J);

  if (IsOffline(protocol)) {
    if (query_matrix == "identity") {
      if (d == 0) d = J;
      if (d != J) throw ConfigError("identity matrix needs d = J");
    } else if (query_matrix == "random-unit-columns") {
      if (d < 1) throw ConfigError("random-unit-columns needs --d >= 1");
    } else if (!(StartsWith(query_matrix, "file:") && query_matrix.size() > 5)) {
      throw ConfigError("unknown query matrix family \"" + query_matrix + "\"");
    }
  }
  if (protocol == Protocol::kAdSamp) {
    if (d < 1) throw ConfigError("adsamp needs --d >= 1");
    if (strategy != "constant" && strategy != "random" &&
        strategy != "tracking-adversary") {
      throw ConfigError("unknown strategy \"" + strategy + "\"");
    }
  }
}

json ConfigToJson(const ExperimentConfig& c) {
  json j{{"protocol", ProtocolName(c.protocol)},
         {"n", c.n},
         {"J", c.J},
         {"d", c.d},
         {"r", c.r},
         {"epsilon", c.epsilon},
         {"distribution", c.distribution},
         {"query_matrix", c.query_matrix},
         {"strategy", c.strategy},
         {"trials", c.trials},
         {"seed", c.seed},
         {"output", c.output}};
  if (c.delta) j["delta"] = *c.delta;
  return j;
}

ExperimentConfig ConfigFromJson(const json& input) {
  const json& j = input.contains("config") ? input.at("config") : input;
  ExperimentConfig c;
  try {
    if (j.contains("protocol")) c.protocol = ParseProtocol(j.at("protocol"));
    if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
    if (j.contains("J")) c.J = j.at("J").get<int>();
    if (j.contains("d")) c.d = j.at("d").get<int>();
    if (j.contains("r")) c.r = j.at("r").get<double>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("delta") && !j.at("delta").is_null()) {
      c.delta = j.at("delta").get<double>();
    }
    if (j.contains("distribution")) c.distribution = j.at("distribution");
    if (j.contains("query_matrix")) c.query_matrix = j.at("query_matrix");
    if (j.contains("strategy")) c.strategy = j.at("strategy");
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) c.output = j.at("output");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

Distribution BuildDistribution(const ExperimentConfig& config) {
  const std::string& name = config.distribution;
  const auto J = static_cast<std::size_t>(config.J);
  std::vector<double> masses(J, 0.0);
  if (name == "uniform") {
    std::fill(masses.begin(), masses.end(), 1.0 / static_cast<double>(J));
  } else if (name == "zipf" || StartsWith(name, "zipf:")) {
    const double s = name == "zipf" ? 1.0 : ParseNumber(name.substr(5), "zipf");
    CompensatedSum total;
    for (std::size_t j = 0; j < J; ++j) {
      masses[j] = std::pow(static_cast<double>(j + 1), -s);
      total.Add(masses[j]);
    }
    for (double& m : masses) m /= total.Total();
  } else if (StartsWith(name, "point:")) {
    masses[static_cast<std::size_t>(ParseNumber(name.substr(6), "point")) - 1] = 1.0;
  } else if (name == "two-spike") {
    Rng rng = MakeRng(DeriveSeed(config.seed, StreamTag::kInstance));
    std::uniform_int_distribution<std::size_t> pick(0, J - 1);
    const std::size_t first = pick(rng);
    std::size_t second = first;
    while (second == first) second = pick(rng);
    masses[first] = 0.5 + kTwoSpikeGamma;
    masses[second] = 0.5 - kTwoSpikeGamma;
  } else if (StartsWith(name, "file:")) {
    Distribution loaded = LoadDistribution(name.substr(5));
    if (loaded.J() != config.J) {
      throw ConfigError("distribution file has J = " +
                        std::to_string(loaded.J()) + ", config has " +
                        std::to_string(config.J));
    }
    return loaded;
  } else {
    throw ConfigError("unknown distribution family \"" + name + "\"");
  }
  return Distribution::Create(std::move(masses));
}

QueryMatrix BuildQueryMatrix(const ExperimentConfig& config) {
  const std::string& name = config.query_matrix;
  if (name == "identity") {
    return QueryMatrix::Identity(config.J, config.r);
  }
  if (name == "random-unit-columns") {
    Rng rng = MakeRng(DeriveSeed(DeriveSeed(config.seed, StreamTag::kInstance),
                                 static_cast<std::uint64_t>(1)));
    std::vector<std::vector<double>> cols(
        static_cast<std::size_t>(config.J),
        std::vector<double>(static_cast<std::size_t>(config.d)));
    for (auto& col : cols) {
      double norm = 0.0;
      while (norm == 0.0) {
        norm = 0.0;
        for (double& x : col) {
          x = StandardNormal(rng);
          norm += x * x;
        }
        norm = std::sqrt(norm);
      }
      for (double& x : col) x *= config.r / norm;
    }
    return QueryMatrix::FromColumns(cols, config.r);
  }
  if (StartsWith(name, "file:")) {
    QueryMatrix loaded = LoadQueryMatrix(name.substr(5));
    if (loaded.J() != config.J) {
      throw ConfigError("query matrix file has J = " +
                        std::to_string(loaded.J()) + ", config has " +
                        std::to_string(config.J));
    }
    if (config.d != 0 && loaded.d() != config.d) {
      throw ConfigError("query matrix file has d = " +
                        std::to_string(loaded.d()) + ", config has " +
                        std::to_string(config.d));
    }
    return loaded;
  }
  throw ConfigError("unknown query matrix family \"" + name + "\"");
}

TheoryBound TheoreticalBound(const ExperimentConfig& config) {
  const double n = static_cast<double>(config.n);
  const double J = static_cast<double>(config.J);
  const double r = config.r;
  const double eps = config.epsilon;
  if (config.n < 1 || config.J < 2) {
    throw DomainError("bound needs n >= 1 and J >= 2");
  }
  int d_int = config.d;
  if (d_int == 0 && config.query_matrix == "identity") d_int = config.J;
  const double d = static_cast<double>(d_int);

  TheoryBound bound;
  switch (config.protocol) {
    case Protocol::kGauss: {
      if (!config.delta) throw DomainError("gauss bound needs delta");
      const PrivacyBudget budget = PrivacyBudget::Create(eps, *config.delta);
      const double log_term = std::log(2.0 / budget.delta);
      if (!(log_term > 0.0)) throw DomainError("log(2 / delta) must be > 0");
      if (d_int < 1) throw DomainError("gauss bound needs d >= 1");
      const double raw =
          r * std::min(std::pow(32.0 * std::log(J) * log_term / (n * eps * eps), 0.25),
                       std::sqrt(2.0 * d * log_term / (n * eps * eps)));
      bound.value = std::min(raw, r);
      bound.vs_truth = std::min(raw + r / std::sqrt(n), r);
      bound.metric = "l2_vs_phat";
      return bound;
    }
    case Protocol::kRejSamp: {
      if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
      if (d_int < 1) throw DomainError("rejsamp bound needs d >= 1");
      const double raw =
          r * std::min(std::pow(280.0 * std::log(J) * std::log(n) / (n * eps * eps), 0.25),
                       std::sqrt(10.0 * d * std::log(n) / (n * eps * eps)));
      bound.value = std::min(raw, r);
      bound.vs_truth = std::min(raw + r / std::sqrt(n), r);
      bound.metric = "l2_vs_phat";
      return bound;
    }
    case Protocol::kPhr: {
      const double c = RrBiasConstant(eps);
      const double raw = std::min(std::pow(256.0 * c * c * std::log(J) / n, 0.25),
                                  std::sqrt(4.0 * c * c * J / n));
      bound.value = std::min(raw, 1.0);
      bound.vs_truth = bound.value;
      bound.metric = "l2_vs_p";
      return bound;
    }
    case Protocol::kAdSamp: {
      if (d_int < 1) throw DomainError("adsamp bound needs d >= 1");
      const double c = RrBiasConstant(eps);
      const double raw = 4.0 * r * std::sqrt(c * c * d * std::log(2.0 * d) / n);
      bound.value = std::min(raw, r);
      bound.vs_truth = bound.value;
      bound.metric = "linf";
      return bound;
    }
    case Protocol::kBaseline:
      break;
  }
  throw DomainError("no theorem bound for protocol " +
                    ProtocolName(config.protocol));
}

ExperimentResult RunExperiment(ExperimentConfig config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();

  Instance inst{BuildDistribution(config), std::nullopt, {}};
  if (IsOffline(config.protocol)) {
    inst.A = BuildQueryMatrix(config);
    config.d = inst.A->d();
    inst.truth = TrueAnswers(*inst.A, inst.p);
  }

  ExperimentResult result;
  result.config = config;
  result.trials.resize(config.trials);
  if (config.trials == 1) {
    result.trials[0] = RunTrial(config, inst, 0, Execution::kParallel);
  } else {
    std::vector<std::exception_ptr> errors(config.trials);
    const auto T = static_cast<std::ptrdiff_t>(config.trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < T; ++t) {
      try {
        result.trials[t] = RunTrial(config, inst, static_cast<std::size_t>(t),
                                    Execution::kSerial);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  result.l2_vs_p = Summarize(result.trials, &TrialRecord::l2_vs_p);
  result.l2_vs_phat = Summarize(result.trials, &TrialRecord::l2_vs_phat);
  result.linf = Summarize(result.trials, &TrialRecord::linf);

  if (config.protocol == Protocol::kBaseline) {
    const double value = config.r / std::sqrt(static_cast<double>(config.n)) *
                         (1.0 + 5.0 / std::sqrt(static_cast<double>(config.trials)));
    result.bound = TheoryBound{value, value, "l2_vs_p"};
  } else {
    result.bound = TheoreticalBound(config);
  }
  if (result.bound.metric == "l2_vs_phat") {
    result.checked_mean = result.l2_vs_phat.mean;
  } else if (result.bound.metric == "linf") {
    result.checked_mean = result.linf.mean;
  } else {
    result.checked_mean = result.l2_vs_p.mean;
  }
  result.bound_satisfied = result.checked_mean <= result.bound.value;
  result.bound_vs_truth_satisfied =
      IsOffline(config.protocol) ? result.l2_vs_p.mean <= result.bound.vs_truth
                                 : result.bound_satisfied;

  std::size_t gap_exceeded = 0, regime = 0;
  CompensatedSum n_hat_sum;
  result.n_hat_min = std::numeric_limits<std::size_t>::max();
  for (const auto& t : result.trials) {
    gap_exceeded += t.gap_exceeded;
    regime += t.regime_warning;
    n_hat_sum.Add(static_cast<double>(t.n_hat));
    result.n_hat_min = std::min(result.n_hat_min, t.n_hat);
    result.n_hat_max = std::max(result.n_hat_max, t.n_hat);
  }
  result.n_hat_mean = n_hat_sum.Total() / static_cast<double>(config.trials);
  if (gap_exceeded > 0) {
    result.warnings.push_back("projection stopped above the gap tolerance in " +
                              std::to_string(gap_exceeded) + " trial(s)");
  }
  if (config.protocol == Protocol::kRejSamp && config.n < kRejSampMinUsers) {
    result.warnings.push_back("n < 120: outside the accuracy theorem's regime");
  }
  if (config.protocol == Protocol::kAdSamp && regime > 0) {
    result.warnings.push_back(
        "n < 8 d ln n or an empty round in " + std::to_string(regime) +
        " trial(s): outside the accuracy theorem's regime");
  }
  result.thresholds = Thresholds(config);
  result.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string ResultCsv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "trial,l2_vs_p,l2_vs_phat,linf,n_hat,projected,gap\n";
  for (const auto& t : result.trials) {
    out << t.trial << ',' << FormatDouble(t.l2_vs_p) << ','
        << FormatDouble(t.l2_vs_phat) << ',' << FormatDouble(t.linf) << ','
        << t.n_hat << ',' << (t.projected ? 1 : 0) << ','
        << FormatDouble(t.gap) << '\n';
  }
  return out.str();
}

json ResultSummaryJson(const ExperimentResult& result) {
  auto metric = [](const MetricSummary& m) {
    return json{{"mean", m.mean}, {"stddev", m.stddev}};
  };
  json j;
  j["config"] = ConfigToJson(result.config);
  j["seed_derivation"] =
      "trial t uses DeriveSeed(seed, t); dataset, users, partition and "
      "strategy streams are tagged sub-streams of the trial seed";
  j["trials"] = result.trials.size();
  j["metrics"] = {{"l2_vs_p", metric(result.l2_vs_p)},
                  {"l2_vs_phat", metric(result.l2_vs_phat)},
                  {"linf", metric(result.linf)}};
  j["bound"] = {{"metric", result.bound.metric},
                {"value", result.bound.value},
                {"mean", result.checked_mean},
                {"satisfied", result.bound_satisfied},
                {"vs_truth_value", result.bound.vs_truth},
                {"vs_truth_satisfied", result.bound_vs_truth_satisfied}};
  j["active_users"] = {{"mean", result.n_hat_mean},
                       {"min", result.n_hat_min},
                       {"max", result.n_hat_max}};
  j["thresholds"] = result.thresholds;
  j["warnings"] = result.warnings;
  j["wall_clock_seconds"] = result.wall_clock_seconds;
  return j;
}

std::string SummaryPathFor(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() > ext.size() &&
      csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".json";
  }
  return csv_path + ".json";
}

void WriteExperimentOutputs(const ExperimentResult& result) {
  if (result.config.output.empty()) throw IoError("no output path configured");
  WriteTextFile(result.config.output, ResultCsv(result));
  WriteTextFile(SummaryPathFor(result.config.output),
                ResultSummaryJson(result).dump(2) + "\n");
}

// ---------------------------------------------------------------------------

AuditKind ParseAuditKind(const std::string& name) {
  if (name == "adaptive-rr") return AuditKind::kAdaptiveRr;
  if (name == "hadamard-rr") return AuditKind::kHadamardRr;
  if (name == "rejsamp-bit") return AuditKind::kRejSampBit;
  throw DomainError("unsupported audit kind \"" + name + "\"");
}

std::string AuditKindName(AuditKind kind) {
  switch (kind) {
    case AuditKind::kAdaptiveRr: return "adaptive-rr";
    case AuditKind::kHadamardRr: return "hadamard-rr";
    case AuditKind::kRejSampBit: return "rejsamp-bit";
  }
  return "unknown";
}

AuditReport RunAudit(AuditKind kind, const AuditParams& params) {
  if (!(params.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  AuditReport report{kind, false, 0.0, params.epsilon, json::object()};
  switch (kind) {
    case AuditKind::kAdaptiveRr: {
      if (params.J < 1 || params.queries < 1) {
        throw DomainError("adaptive-rr audit needs J >= 1 and queries >= 1");
      }
      Rng rng = MakeRng(params.seed);
      report.pass = true;
      json per_query = json::array();
      for (int k = 0; k < params.queries; ++k) {
        std::vector<double> q(static_cast<std::size_t>(params.J));
        for (std::size_t v = 0; v < q.size(); ++v) {
          // Query 0 holds the extreme points +-r, which realize the worst case.
          q[v] = k == 0 ? (v % 2 == 0 ? params.r : -params.r)
                        : params.r * (2.0 * Uniform01(rng) - 1.0);
        }
        const LdpAuditResult audit = AuditFiniteLdp(
            AdaptiveChannel(QueryVector::Create(std::move(q), params.r),
                            params.epsilon),
            params.epsilon);
        report.pass = report.pass && audit.pass;
        report.measured = std::max(report.measured, audit.max_log_ratio);
        per_query.push_back(audit.max_log_ratio);
      }
      report.details = {{"J", params.J}, {"r", params.r},
                        {"per_query_max_log_ratio", per_query}};
      break;
    }
    case AuditKind::kHadamardRr: {
      const LdpAuditResult audit =
          AuditFiniteLdp(HadamardChannel(params.J, params.epsilon), params.epsilon);
      report.pass = audit.pass;
      report.measured = audit.max_log_ratio;
      report.details = {{"J", params.J},
                        {"padded_size", PaddedSize(params.J)},
                        {"worst_input", audit.worst_input},
                        {"worst_other_input", audit.worst_other_input},
                        {"worst_output", audit.worst_output + 1}};
      break;
    }
    case AuditKind::kRejSampBit: {
      if (params.J < 2) throw DomainError("rejsamp-bit audit needs J >= 2");
      // Columns evenly spaced over [-r, r]; J = 2 gives the extreme pair.
      std::vector<double> row(static_cast<std::size_t>(params.J));
      for (int j = 0; j < params.J; ++j) {
        row[j] = params.r * (-1.0 + 2.0 * j / (params.J - 1));
      }
      const QueryMatrix A = QueryMatrix::FromRows({row}, params.r);
      const RejSampBitAuditResult audit =
          AuditRejSampBit(A, params.epsilon, params.n);
      report.pass = audit.pass;
      report.measured = audit.max_log_ratio;
      report.details = {{"J", params.J}, {"r", params.r}, {"n", params.n},
                        {"acceptance_probability", audit.acceptance}};
      break;
    }
  }
  return report;
}

json AuditReportJson(const AuditReport& report) {
  return json{{"kind", AuditKindName(report.kind)},
              {"verdict", report.pass ? "PASS" : "FAIL"},
              {"epsilon", report.epsilon},
              {"measured_max_privacy_loss", report.measured},
              {"details", report.details}};
}

}  // namespace ldpq
