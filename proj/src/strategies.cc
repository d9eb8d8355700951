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

#include <cmath>

#include "ldpq/errors.h"
#include "ldpq/protocols.h"

namespace ldpq {

RandomStrategy::RandomStrategy(int J, double r, std::uint64_t seed)
    : J_(J), r_(r), rng_(MakeRng(DeriveSeed(seed, StreamTag::kStrategy))) {
  if (J < 1) throw DomainError("strategy needs J >= 1");
}

QueryVector RandomStrategy::NextQuery(std::span<const AdaptiveRound>) {
  std::vector<double> q(static_cast<std::size_t>(J_));
  for (double& x : q) x = r_ * (2.0 * Uniform01(rng_) - 1.0);
  return QueryVector::Create(std::move(q), r_);
}

TrackingAdversary::TrackingAdversary(Distribution p, double r,
                                     std::uint64_t seed)
    : p_(std::move(p)), r_(r),
      rng_(MakeRng(DeriveSeed(seed, StreamTag::kStrategy))) {}

QueryVector TrackingAdversary::NextQuery(
    std::span<const AdaptiveRound> history) {
  const auto J = static_cast<std::size_t>(p_.J());
  std::vector<double> q(J);
  if (history.empty()) {
    for (double& x : q) x = (rng_() >> 63) ? r_ : -r_;
    return QueryVector::Create(std::move(q), r_);
  }
  std::vector<double> score(J, 0.0);
  for (const AdaptiveRound& round : history) {
    double truth = 0.0;
    for (std::size_t v = 0; v < J; ++v) {
      truth += round.query.coords()[v] * p_.masses()[v];
    }
    const double direction = round.estimate >= truth ? 1.0 : -1.0;
    for (std::size_t v = 0; v < J; ++v) {
      score[v] += direction * round.query.coords()[v];
    }
  }
  for (std::size_t v = 0; v < J; ++v) q[v] = score[v] >= 0.0 ? r_ : -r_;
  return QueryVector::Create(std::move(q), r_);
}

}  // namespace ldpq
