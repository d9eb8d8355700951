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

#ifndef LDPQ_PROTOCOLS_H_
#define LDPQ_PROTOCOLS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "json.hpp"
#include "ldpq/core.h"
#include "ldpq/kernels.h"
#include "ldpq/projection.h"

namespace ldpq {

using kernels::Execution;

struct OfflineRunResult {
  std::vector<double> estimate;  // y_hat
  std::vector<double> raw_mean;  // y_bar, mean of the accepted reports
  std::size_t active_users = 0;  // n_hat
  bool projected = false;
  double gap = 0.0;              // projection duality gap, 0 if unprojected
  bool gap_exceeded = false;
  double threshold = 0.0;        // projection threshold on the left-hand count
  bool outside_theorem_regime = false;
};

// Gaussian-noise protocol, (epsilon, delta)-LDP. Projects the mean onto
// A B_1^J iff n < d^2 ln(2/delta) / (8 eps^2 ln J).
OfflineRunResult RunGauss(const QueryMatrix& A, const Dataset& data,
                          const PrivacyBudget& budget, std::uint64_t seed,
                          Execution exec = Execution::kParallel);

double GaussProjectionThreshold(int d, int J, const PrivacyBudget& budget);

// Rejection-sampling protocol, pure epsilon-LDP (epsilon <= 1). Projects iff
// n_hat < d^2 ln(n) / (4 eps^2 ln J). Throws AllUsersDroppedError if n_hat = 0.
// Results with n < 120 are flagged outside_theorem_regime.
OfflineRunResult RunRejSamp(const QueryMatrix& A, const Dataset& data,
                            double epsilon, std::uint64_t seed,
                            Execution exec = Execution::kParallel);

double RejSampProjectionThreshold(int d, int J, std::size_t n, double epsilon);

struct PhrResult {
  Distribution estimate;    // projection of raw onto the simplex
  std::vector<double> raw;  // decoded p_bar
};

// Projected Hadamard response. Always projects.
PhrResult RunPhr(const Dataset& data, int J, double epsilon, std::uint64_t seed,
                 Execution exec = Execution::kParallel);

// ---------------------------------------------------------------------------
// Adaptive protocol.

struct AdaptiveRound {
  QueryVector query;
  double estimate = 0.0;       // y_bar_k
  std::size_t active_count = 0;  // n_hat_k
  bool empty = false;          // no user assigned; estimate forced to 0
};

struct AdaptiveTranscript {
  std::vector<AdaptiveRound> rounds;
  std::vector<int> assignment;   // j_i in [1, d] per user
  std::vector<double> reports;   // each user's single report, +-c_eps r
  bool outside_theorem_regime = false;  // n < 8 d ln n
};

// Chooses the next query from the (query, estimate) history.
class AdaptiveStrategy {
 public:
  virtual ~AdaptiveStrategy() = default;
  virtual QueryVector NextQuery(std::span<const AdaptiveRound> history) = 0;
};

// Same query every round.
class ConstantStrategy : public AdaptiveStrategy {
 public:
  explicit ConstantStrategy(QueryVector q) : q_(std::move(q)) {}
  QueryVector NextQuery(std::span<const AdaptiveRound>) override { return q_; }

 private:
  QueryVector q_;
};

// Independent uniform coordinates in [-r, r] each round.
class RandomStrategy : public AdaptiveStrategy {
 public:
  RandomStrategy(int J, double r, std::uint64_t seed);
  QueryVector NextQuery(std::span<const AdaptiveRound> history) override;

 private:
  int J_;
  double r_;
  Rng rng_;
};

// Analyst that knows p and tries to push later queries toward the direction in
// which earlier answers erred: round 1 asks random signs; round k asks
// q_k(v) = r sign(sum_{l<k} sign(y_bar_l - <q_l, p>) q_l(v)).
class TrackingAdversary : public AdaptiveStrategy {
 public:
  TrackingAdversary(Distribution p, double r, std::uint64_t seed);
  QueryVector NextQuery(std::span<const AdaptiveRound> history) override;

 private:
  Distribution p_;
  double r_;
  Rng rng_;
};

// Assignment j_i in [1, d] for n users, drawn from the partition stream of
// `seed` only (independent of the data).
std::vector<int> AssignRounds(std::size_t n, int d, std::uint64_t seed);

// Sample-splitting adaptive protocol, pure epsilon-LDP. Every query is checked
// against ||q||_inf <= r before any user sees it (QueryValidationError).
AdaptiveTranscript RunAdSamp(const Dataset& data, int d, double r,
                             double epsilon, AdaptiveStrategy& strategy,
                             std::uint64_t seed,
                             Execution exec = Execution::kParallel);

// JSON views of protocol outputs, for transcripts and debugging.
nlohmann::json OfflineRunResultToJson(const OfflineRunResult& result);
nlohmann::json AdaptiveTranscriptToJson(const AdaptiveTranscript& transcript);

}  // namespace ldpq

#endif  // LDPQ_PROTOCOLS_H_
