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

#include "ldpq/core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldpq/errors.h"

namespace ldpq {
namespace {

constexpr double kNormalizeTolerance = 1e-9;
constexpr double kBoundSlack = 1e-9;

void CheckSameLength(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DomainError("length mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> masses)
    : masses_(std::move(masses)), cdf_(masses_.size()) {
  CompensatedSum running;
  for (std::size_t j = 0; j < masses_.size(); ++j) {
    running.Add(masses_[j]);
    cdf_[j] = std::min(running.Total(), 1.0);
  }
  cdf_.back() = 1.0;
}

Distribution Distribution::Create(std::vector<double> masses) {
  if (masses.size() < 2) {
    throw DomainError("distribution needs J >= 2 elements");
  }
  CompensatedSum total;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0.0) {
      throw DomainError("distribution masses must be finite and non-negative");
    }
    total.Add(m);
  }
  const double sum = total.Total();
  if (std::abs(sum - 1.0) > kNormalizeTolerance) {
    throw DomainError("distribution masses sum to " + std::to_string(sum) +
                      ", not 1");
  }
  if (sum != 1.0) {
    for (double& m : masses) m /= sum;
  }
  return Distribution(std::move(masses));
}

Dataset Dataset::Create(std::vector<int> inputs, int J) {
  if (J < 1) throw DomainError("dataset domain size must be >= 1");
  if (inputs.empty()) throw DomainError("dataset needs n >= 1");
  for (int v : inputs) {
    if (v < 1 || v > J) {
      throw DomainError("input " + std::to_string(v) + " outside [1, " +
                        std::to_string(J) + "]");
    }
  }
  return Dataset(std::move(inputs), J);
}

QueryMatrix::QueryMatrix(int d, int J, double r, std::vector<double> entries)
    : d_(d), J_(J), r_(r), entries_(std::move(entries)) {
  if (d_ < 1 || J_ < 1) throw DomainError("query matrix needs d, J >= 1");
  if (!(r_ > 0.0) || !std::isfinite(r_)) {
    throw DomainError("column-norm bound r must be positive and finite");
  }
  for (int j = 1; j <= J_; ++j) {
    double sq = 0.0;
    for (double x : column(j)) {
      if (!std::isfinite(x)) throw DomainError("query matrix entry not finite");
      sq += x * x;
    }
    if (std::sqrt(sq) > r_ * (1.0 + kBoundSlack)) {
      throw DomainError("column " + std::to_string(j) + " has norm " +
                        std::to_string(std::sqrt(sq)) + " > r = " +
                        std::to_string(r_));
    }
  }
}

QueryMatrix QueryMatrix::FromRows(const std::vector<std::vector<double>>& rows,
                                  double r) {
  if (rows.empty() || rows.front().empty()) {
    throw DomainError("query matrix must be non-empty");
  }
  const int d = static_cast<int>(rows.size());
  const int J = static_cast<int>(rows.front().size());
  std::vector<double> entries(static_cast<std::size_t>(d) * J);
  for (int k = 0; k < d; ++k) {
    if (static_cast<int>(rows[k].size()) != J) {
      throw DomainError("ragged query matrix rows");
    }
    for (int j = 0; j < J; ++j) {
      entries[static_cast<std::size_t>(j) * d + k] = rows[k][j];
    }
  }
  return QueryMatrix(d, J, r, std::move(entries));
}

QueryMatrix QueryMatrix::FromColumns(
    const std::vector<std::vector<double>>& cols, double r) {
  if (cols.empty() || cols.front().empty()) {
    throw DomainError("query matrix must be non-empty");
  }
  const int J = static_cast<int>(cols.size());
  const int d = static_cast<int>(cols.front().size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(d) * J);
  for (const auto& col : cols) {
    if (static_cast<int>(col.size()) != d) {
      throw DomainError("ragged query matrix columns");
    }
    entries.insert(entries.end(), col.begin(), col.end());
  }
  return QueryMatrix(d, J, r, std::move(entries));
}

QueryMatrix QueryMatrix::Identity(int J, double r) {
  std::vector<double> entries(static_cast<std::size_t>(J) * J, 0.0);
  for (int j = 0; j < J; ++j) {
    entries[static_cast<std::size_t>(j) * J + j] = r;
  }
  return QueryMatrix(J, J, r, std::move(entries));
}

QueryVector QueryVector::Create(std::vector<double> coords, double r) {
  if (coords.empty()) throw DomainError("query vector must be non-empty");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("query bound r must be positive and finite");
  }
  for (double x : coords) {
    if (!std::isfinite(x) || std::abs(x) > r * (1.0 + kBoundSlack)) {
      throw QueryValidationError("query coordinate " + std::to_string(x) +
                                 " outside [-r, r] with r = " +
                                 std::to_string(r));
    }
  }
  return QueryVector(std::move(coords), r);
}

PrivacyBudget PrivacyBudget::Create(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive and finite");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1)");
  }
  return PrivacyBudget{epsilon, delta};
}

Dataset SampleDataset(const Distribution& dist, std::size_t n, Rng& rng) {
  if (n < 1) throw DomainError("sample size must be >= 1");
  const auto cdf = dist.cdf();
  const auto masses = dist.masses();
  std::vector<int> inputs(n);
  for (auto& v : inputs) {
    const double u = Uniform01(rng);
    auto j = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    // u == 0 can land on a leading zero-mass element.
    while (masses[j] == 0.0 && j + 1 < masses.size()) ++j;
    v = static_cast<int>(j) + 1;
  }
  return Dataset::Create(std::move(inputs), dist.J());
}

Histogram ComputeHistogram(const Dataset& data, int J) {
  if (J < 1) throw DomainError("histogram domain size must be >= 1");
  Histogram h;
  h.counts_.assign(static_cast<std::size_t>(J), 0);
  for (int v : data.inputs()) {
    if (v < 1 || v > J) {
      throw DomainError("input " + std::to_string(v) + " outside [1, " +
                        std::to_string(J) + "]");
    }
    ++h.counts_[static_cast<std::size_t>(v - 1)];
  }
  h.n_ = data.n();
  h.masses_.resize(h.counts_.size());
  const double n = static_cast<double>(h.n_);
  for (std::size_t j = 0; j < h.counts_.size(); ++j) {
    h.masses_[j] = static_cast<double>(h.counts_[j]) / n;
  }
  return h;
}

std::vector<double> TrueAnswers(const QueryMatrix& A,
                                std::span<const double> p) {
  if (static_cast<int>(p.size()) != A.J()) {
    throw DomainError("query matrix has J = " + std::to_string(A.J()) +
                      " but vector has " + std::to_string(p.size()) +
                      " entries");
  }
  std::vector<double> out(static_cast<std::size_t>(A.d()), 0.0);
  for (int j = 1; j <= A.J(); ++j) {
    const double w = p[j - 1];
    if (w == 0.0) continue;
    const auto col = A.column(j);
    for (int k = 0; k < A.d(); ++k) out[k] += w * col[k];
  }
  return out;
}

std::vector<double> TrueAnswers(const QueryMatrix& A, const Distribution& p) {
  return TrueAnswers(A, p.masses());
}

double L2Error(std::span<const double> estimate,
               std::span<const double> truth) {
  CheckSameLength(estimate, truth);
  double sq = 0.0;
  for (std::size_t k = 0; k < estimate.size(); ++k) {
    const double diff = estimate[k] - truth[k];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

double LinfError(std::span<const double> estimate,
                 std::span<const double> truth) {
  CheckSameLength(estimate, truth);
  double worst = 0.0;
  for (std::size_t k = 0; k < estimate.size(); ++k) {
    worst = std::max(worst, std::abs(estimate[k] - truth[k]));
  }
  return worst;
}

std::vector<double> NonprivateBaseline(const QueryMatrix& A,
                                       const Dataset& data) {
  if (data.J() != A.J()) {
    throw DomainError("dataset domain does not match query matrix");
  }
  return TrueAnswers(A, ComputeHistogram(data, A.J()).masses());
}

void CompensatedSum::Add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace ldpq
