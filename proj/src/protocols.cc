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

#include "ldpq/protocols.h"

#include <cmath>
#include <string>

#include "ldpq/errors.h"
#include "ldpq/hadamard.h"
#include "ldpq/randomizers.h"

namespace ldpq {
namespace {

constexpr std::size_t kRejSampMinUsers = 120;

void CheckDomain(const QueryMatrix& A, const Dataset& data) {
  if (A.J() < 2) throw DomainError("protocol needs J >= 2 (ln J > 0)");
  if (data.J() != A.J()) {
    throw DomainError("dataset domain size " + std::to_string(data.J()) +
                      " does not match query matrix J = " +
                      std::to_string(A.J()));
  }
}

std::vector<double> Mean(std::span<const double> rows, int d,
                         std::span<const std::uint8_t> mask, Execution exec) {
  return exec == Execution::kParallel ? kernels::parallel::MeanOfRows(rows, d, mask)
                                      : kernels::serial::MeanOfRows(rows, d, mask);
}

void MaybeProject(const QueryMatrix& A, bool project, OfflineRunResult& result) {
  result.projected = project;
  if (!project) {
    result.estimate = result.raw_mean;
    return;
  }
  PolytopeProjection proj =
      ProjectPolytope(PolytopeSpec::For(A), result.raw_mean);
  result.estimate = std::move(proj.point);
  result.gap = proj.gap;
  result.gap_exceeded = proj.gap_exceeded;
}

}  // namespace

double GaussProjectionThreshold(int d, int J, const PrivacyBudget& budget) {
  const double eps = budget.epsilon;
  return static_cast<double>(d) * d * std::log(2.0 / budget.delta) /
         (8.0 * eps * eps * std::log(static_cast<double>(J)));
}

OfflineRunResult RunGauss(const QueryMatrix& A, const Dataset& data,
                          const PrivacyBudget& budget, std::uint64_t seed,
                          Execution exec) {
  CheckDomain(A, data);
  const double sigma2 = GaussianSigma2(A.r(), budget);
  std::vector<double> reports(data.n() * static_cast<std::size_t>(A.d()));
  const std::uint64_t user_seed = DeriveSeed(seed, StreamTag::kUsers);
  if (exec == Execution::kParallel) {
    kernels::parallel::GaussianReports(A, data.inputs(), sigma2, user_seed, reports);
  } else {
    kernels::serial::GaussianReports(A, data.inputs(), sigma2, user_seed, reports);
  }

  OfflineRunResult result;
  result.active_users = data.n();
  result.raw_mean = Mean(reports, A.d(), {}, exec);
  result.threshold = GaussProjectionThreshold(A.d(), A.J(), budget);
  MaybeProject(A, static_cast<double>(data.n()) < result.threshold, result);
  return result;
}

double RejSampProjectionThreshold(int d, int J, std::size_t n,
                                  double epsilon) {
  return static_cast<double>(d) * d * std::log(static_cast<double>(n)) /
         (4.0 * epsilon * epsilon * std::log(static_cast<double>(J)));
}

OfflineRunResult RunRejSamp(const QueryMatrix& A, const Dataset& data,
                            double epsilon, std::uint64_t seed,
                            Execution exec) {
  CheckDomain(A, data);
  CheckRejSampParameters(epsilon, data.n());
  const std::size_t n = data.n();
  std::vector<double> reports(n * static_cast<std::size_t>(A.d()));
  std::vector<std::uint8_t> accepted(n);
  const std::uint64_t user_seed = DeriveSeed(seed, StreamTag::kUsers);
  if (exec == Execution::kParallel) {
    kernels::parallel::RejSampReports(A, data.inputs(), epsilon, n, user_seed,
                                      reports, accepted);
  } else {
    kernels::serial::RejSampReports(A, data.inputs(), epsilon, n, user_seed,
                                    reports, accepted);
  }

  OfflineRunResult result;
  for (auto b : accepted) result.active_users += b;
  if (result.active_users == 0) {
    throw AllUsersDroppedError("every user was dropped by rejection sampling");
  }
  result.outside_theorem_regime = n < kRejSampMinUsers;
  result.raw_mean = Mean(reports, A.d(), accepted, exec);
  // The threshold uses the original n inside the log and n_hat on the left.
  result.threshold = RejSampProjectionThreshold(A.d(), A.J(), n, epsilon);
  MaybeProject(A, static_cast<double>(result.active_users) < result.threshold,
               result);
  return result;
}

PhrResult RunPhr(const Dataset& data, int J, double epsilon, std::uint64_t seed,
                 Execution exec) {
  if (J < 2) throw DomainError("distribution estimation needs J >= 2");
  if (data.J() != J) throw DomainError("dataset domain size does not match J");
  const HadamardContext ctx = HadamardContext::Create(J, epsilon);
  std::vector<int> reports(data.n());
  const std::uint64_t user_seed = DeriveSeed(seed, StreamTag::kUsers);
  std::vector<std::uint64_t> counts;
  if (exec == Execution::kParallel) {
    kernels::parallel::HadamardReports(data.inputs(), J, epsilon, user_seed, reports);
    counts = kernels::parallel::CountReports(reports, ctx.Jt);
  } else {
    kernels::serial::HadamardReports(data.inputs(), J, epsilon, user_seed, reports);
    counts = kernels::serial::CountReports(reports, ctx.Jt);
  }
  std::vector<double> raw = Decode(ReportCounts::FromCounts(std::move(counts)), ctx);
  Distribution estimate = Distribution::Create(ProjectSimplex(raw));
  return PhrResult{std::move(estimate), std::move(raw)};
}

std::vector<int> AssignRounds(std::size_t n, int d, std::uint64_t seed) {
  if (d < 1) throw DomainError("adaptive protocol needs d >= 1");
  Rng rng = MakeRng(DeriveSeed(seed, StreamTag::kPartition));
  std::uniform_int_distribution<int> round(1, d);
  std::vector<int> assignment(n);
  for (int& j : assignment) j = round(rng);
  return assignment;
}

AdaptiveTranscript RunAdSamp(const Dataset& data, int d, double r,
                             double epsilon, AdaptiveStrategy& strategy,
                             std::uint64_t seed, Execution exec) {
  if (!(r > 0.0)) throw DomainError("query bound r must be positive");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const std::size_t n = data.n();
  AdaptiveTranscript transcript;
  transcript.assignment = AssignRounds(n, d, seed);
  transcript.reports.assign(n, 0.0);
  const double nd = static_cast<double>(n);
  transcript.outside_theorem_regime = nd < 8.0 * d * std::log(nd);

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    members[transcript.assignment[i] - 1].push_back(i);
  }

  const std::uint64_t user_seed = DeriveSeed(seed, StreamTag::kUsers);
  for (int k = 1; k <= d; ++k) {
    QueryVector proposed = strategy.NextQuery(transcript.rounds);
    if (proposed.J() != data.J()) {
      throw QueryValidationError("strategy query has the wrong length");
    }
    // Re-validate against the protocol's r; this is what the randomizer's
    // privacy relies on.
    QueryVector query = QueryVector::Create(
        std::vector<double>(proposed.coords().begin(), proposed.coords().end()),
        r);

    const auto& users = members[k - 1];
    if (exec == Execution::kParallel) {
      kernels::parallel::AdaptiveReports(query, data.inputs(), users, epsilon,
                                         user_seed, transcript.reports);
    } else {
      kernels::serial::AdaptiveReports(query, data.inputs(), users, epsilon,
                                       user_seed, transcript.reports);
    }
    AdaptiveRound round{std::move(query), 0.0, users.size(), users.empty()};
    if (!users.empty()) {
      CompensatedSum sum;
      for (std::size_t i : users) sum.Add(transcript.reports[i]);
      round.estimate = sum.Total() / static_cast<double>(users.size());
    }
    transcript.rounds.push_back(std::move(round));
  }
  return transcript;
}

nlohmann::json OfflineRunResultToJson(const OfflineRunResult& result) {
  return {{"estimate", result.estimate},
          {"raw_mean", result.raw_mean},
          {"active_users", result.active_users},
          {"projected", result.projected},
          {"gap", result.gap},
          {"gap_exceeded", result.gap_exceeded},
          {"threshold", result.threshold},
          {"outside_theorem_regime", result.outside_theorem_regime}};
}

nlohmann::json AdaptiveTranscriptToJson(const AdaptiveTranscript& transcript) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const AdaptiveRound& round : transcript.rounds) {
    rounds.push_back({{"query", std::vector<double>(round.query.coords().begin(),
                                                    round.query.coords().end())},
                      {"r", round.query.r()},
                      {"estimate", round.estimate},
                      {"active_count", round.active_count},
                      {"empty", round.empty}});
  }
  return {{"rounds", rounds},
          {"assignment", transcript.assignment},
          {"outside_theorem_regime", transcript.outside_theorem_regime}};
}

}  // namespace ldpq
