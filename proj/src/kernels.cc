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

#include "ldpq/kernels.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

#include "ldpq/errors.h"
#include "ldpq/hadamard.h"
#include "ldpq/randomizers.h"

namespace ldpq::kernels {
namespace {

void CheckInputs(std::span<const int> inputs, int J) {
  for (int v : inputs) {
    if (v < 1 || v > J) {
      throw DomainError("input " + std::to_string(v) + " outside [1, " +
                        std::to_string(J) + "]");
    }
  }
}

void CheckMatrixOutput(const QueryMatrix& A, std::span<const int> inputs,
                       std::span<double> out) {
  CheckInputs(inputs, A.J());
  if (out.size() != inputs.size() * static_cast<std::size_t>(A.d())) {
    throw DomainError("report buffer must hold n x d values");
  }
}

void GaussianUser(const QueryMatrix& A, int v, double sigma, Rng& rng,
                  double* out) {
  const auto col = A.column(v);
  for (int k = 0; k < A.d(); ++k) out[k] = col[k] + sigma * StandardNormal(rng);
}

std::uint8_t RejSampUser(const QueryMatrix& A, int v, double epsilon,
                         std::size_t n_param, Rng& rng, double* out) {
  RejSampReport report = RandomizeRejSamp(A, v, epsilon, n_param, rng);
  if (report.dropped()) {
    std::fill(out, out + A.d(), 0.0);
    return 0;
  }
  std::copy(report.vector->begin(), report.vector->end(), out);
  return 1;
}

void CheckAdaptive(const QueryVector& q, std::span<const int> inputs,
                   std::span<const std::size_t> users, std::span<double> out) {
  CheckInputs(inputs, q.J());
  if (out.size() != inputs.size()) {
    throw DomainError("adaptive report buffer must hold n values");
  }
  for (std::size_t i : users) {
    if (i >= inputs.size()) throw DomainError("user index out of range");
  }
}

void CheckCounts(std::span<const int> reports, int Jt) {
  for (int z : reports) {
    if (z < 1 || z > Jt) {
      throw DomainError("report " + std::to_string(z) + " outside [1, " +
                        std::to_string(Jt) + "]");
    }
  }
}

std::size_t CheckMean(std::span<const double> rows, int d,
                      std::span<const std::uint8_t> mask) {
  if (d < 1 || rows.size() % static_cast<std::size_t>(d) != 0) {
    throw DomainError("row buffer is not a whole number of d-vectors");
  }
  const std::size_t n = rows.size() / static_cast<std::size_t>(d);
  if (!mask.empty() && mask.size() != n) {
    throw DomainError("mask length must equal the number of rows");
  }
  return n;
}

double ColumnMean(std::span<const double> rows, int d, std::size_t n, int k,
                  std::span<const std::uint8_t> mask) {
  CompensatedSum sum;
  std::size_t selected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask.empty() && !mask[i]) continue;
    sum.Add(rows[i * static_cast<std::size_t>(d) + k]);
    ++selected;
  }
  return selected == 0 ? 0.0 : sum.Total() / static_cast<double>(selected);
}

}  // namespace

// ---------------------------------------------------------------------------

namespace serial {

void GaussianReports(const QueryMatrix& A, std::span<const int> inputs,
                     double sigma2, std::uint64_t seed, std::span<double> out) {
  CheckMatrixOutput(A, inputs, out);
  if (!(sigma2 >= 0.0)) throw DomainError("noise variance must be >= 0");
  const double sigma = std::sqrt(sigma2);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, i));
    GaussianUser(A, inputs[i], sigma, rng, out.data() + i * A.d());
  }
}

void RejSampReports(const QueryMatrix& A, std::span<const int> inputs,
                    double epsilon, std::size_t n_param, std::uint64_t seed,
                    std::span<double> out, std::span<std::uint8_t> accepted) {
  CheckRejSampParameters(epsilon, n_param);
  CheckMatrixOutput(A, inputs, out);
  if (accepted.size() != inputs.size()) {
    throw DomainError("acceptance buffer must hold n flags");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, i));
    accepted[i] = RejSampUser(A, inputs[i], epsilon, n_param, rng,
                              out.data() + i * A.d());
  }
}

void HadamardReports(std::span<const int> inputs, int J, double epsilon,
                     std::uint64_t seed, std::span<int> out) {
  CheckInputs(inputs, J);
  if (out.size() != inputs.size()) throw DomainError("report buffer size");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, i));
    out[i] = RandomizeHadamard(inputs[i], J, epsilon, rng).index;
  }
}

void AdaptiveReports(const QueryVector& q, std::span<const int> inputs,
                     std::span<const std::size_t> users, double epsilon,
                     std::uint64_t seed, std::span<double> out) {
  CheckAdaptive(q, inputs, users, out);
  for (std::size_t i : users) {
    Rng rng = MakeRng(DeriveSeed(seed, i));
    out[i] = RandomizeAdaptive(q, inputs[i], epsilon, rng).value;
  }
}

std::vector<std::uint64_t> CountReports(std::span<const int> reports, int Jt) {
  CheckCounts(reports, Jt);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(Jt), 0);
  for (int z : reports) ++counts[z - 1];
  return counts;
}

std::vector<double> MeanOfRows(std::span<const double> rows, int d,
                               std::span<const std::uint8_t> mask) {
  const std::size_t n = CheckMean(rows, d, mask);
  std::vector<double> mean(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) mean[k] = ColumnMean(rows, d, n, k, mask);
  return mean;
}

}  // namespace serial

// ---------------------------------------------------------------------------

namespace parallel {

void GaussianReports(const QueryMatrix& A, std::span<const int> inputs,
                     double sigma2, std::uint64_t seed, std::span<double> out) {
  CheckMatrixOutput(A, inputs, out);
  if (!(sigma2 >= 0.0)) throw DomainError("noise variance must be >= 0");
  const double sigma = std::sqrt(sigma2);
  const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, static_cast<std::uint64_t>(i)));
    GaussianUser(A, inputs[i], sigma, rng, out.data() + i * A.d());
  }
}

void RejSampReports(const QueryMatrix& A, std::span<const int> inputs,
                    double epsilon, std::size_t n_param, std::uint64_t seed,
                    std::span<double> out, std::span<std::uint8_t> accepted) {
  CheckRejSampParameters(epsilon, n_param);
  CheckMatrixOutput(A, inputs, out);
  if (accepted.size() != inputs.size()) {
    throw DomainError("acceptance buffer must hold n flags");
  }
  const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, static_cast<std::uint64_t>(i)));
    accepted[i] = RejSampUser(A, inputs[i], epsilon, n_param, rng,
                              out.data() + i * A.d());
  }
}

void HadamardReports(std::span<const int> inputs, int J, double epsilon,
                     std::uint64_t seed, std::span<int> out) {
  CheckInputs(inputs, J);
  if (out.size() != inputs.size()) throw DomainError("report buffer size");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Rng rng = MakeRng(DeriveSeed(seed, static_cast<std::uint64_t>(i)));
    out[i] = RandomizeHadamard(inputs[i], J, epsilon, rng).index;
  }
}

void AdaptiveReports(const QueryVector& q, std::span<const int> inputs,
                     std::span<const std::size_t> users, double epsilon,
                     std::uint64_t seed, std::span<double> out) {
  CheckAdaptive(q, inputs, users, out);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const auto m = static_cast<std::ptrdiff_t>(users.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < m; ++u) {
    const std::size_t i = users[u];
    Rng rng = MakeRng(DeriveSeed(seed, i));
    out[i] = RandomizeAdaptive(q, inputs[i], epsilon, rng).value;
  }
}

std::vector<std::uint64_t> CountReports(std::span<const int> reports, int Jt) {
  CheckCounts(reports, Jt);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(Jt), 0);
  const auto n = static_cast<std::ptrdiff_t>(reports.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(static_cast<std::size_t>(Jt), 0);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) ++local[reports[i] - 1];
#pragma omp critical
    for (std::size_t w = 0; w < local.size(); ++w) counts[w] += local[w];
  }
  return counts;
}

std::vector<double> MeanOfRows(std::span<const double> rows, int d,
                               std::span<const std::uint8_t> mask) {
  const std::size_t n = CheckMean(rows, d, mask);
  std::vector<double> mean(static_cast<std::size_t>(d));
  // Parallel over coordinates; each coordinate still sums in user order.
#pragma omp parallel for schedule(static)
  for (int k = 0; k < d; ++k) mean[k] = ColumnMean(rows, d, n, k, mask);
  return mean;
}

}  // namespace parallel

}  // namespace ldpq::kernels
