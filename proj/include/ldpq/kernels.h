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

#ifndef LDPQ_KERNELS_H_
#define LDPQ_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ldpq/core.h"

// Per-user randomization and server aggregation loops.
//
// Each kernel exists twice with one signature: kernels::serial is the plain
// reference loop and kernels::parallel is the OpenMP version. User i always
// draws from its own stream DeriveSeed(seed, i) and sums run in fixed user
// order, so both give bitwise identical outputs for any thread count.
//
// Arguments are validated before any loop runs; loop bodies never throw.
namespace ldpq::kernels {

enum class Execution { kSerial, kParallel };

namespace serial {

// out is n x d, user-major.
void GaussianReports(const QueryMatrix& A, std::span<const int> inputs,
                     double sigma2, std::uint64_t seed, std::span<double> out);

// out is n x d, user-major. Rows of dropped users are zero and accepted[i]
// is 0 for them. n_param is the protocol's n, which sets the noise scale.
void RejSampReports(const QueryMatrix& A, std::span<const int> inputs,
                    double epsilon, std::size_t n_param, std::uint64_t seed,
                    std::span<double> out, std::span<std::uint8_t> accepted);

// out[i] in [1, Jt].
void HadamardReports(std::span<const int> inputs, int J, double epsilon,
                     std::uint64_t seed, std::span<int> out);

// Reports of the listed users (indices into inputs) to one adaptive query.
// Only out[i] for listed i is written.
void AdaptiveReports(const QueryVector& q, std::span<const int> inputs,
                     std::span<const std::size_t> users, double epsilon,
                     std::uint64_t seed, std::span<double> out);

std::vector<std::uint64_t> CountReports(std::span<const int> reports, int Jt);

// Compensated column means over the selected rows of an n x d user-major
// matrix; every row is selected when mask is empty. Zeros if none selected.
std::vector<double> MeanOfRows(std::span<const double> rows, int d,
                               std::span<const std::uint8_t> mask);

}  // namespace serial

namespace parallel {

// out is n x d, user-major.
void GaussianReports(const QueryMatrix& A, std::span<const int> inputs,
                     double sigma2, std::uint64_t seed, std::span<double> out);

// out is n x d, user-major. Rows of dropped users are zero and accepted[i]
// is 0 for them. n_param is the protocol's n, which sets the noise scale.
void RejSampReports(const QueryMatrix& A, std::span<const int> inputs,
                    double epsilon, std::size_t n_param, std::uint64_t seed,
                    std::span<double> out, std::span<std::uint8_t> accepted);

// out[i] in [1, Jt].
void HadamardReports(std::span<const int> inputs, int J, double epsilon,
                     std::uint64_t seed, std::span<int> out);

// Reports of the listed users (indices into inputs) to one adaptive query.
// Only out[i] for listed i is written.
void AdaptiveReports(const QueryVector& q, std::span<const int> inputs,
                     std::span<const std::size_t> users, double epsilon,
                     std::uint64_t seed, std::span<double> out);

std::vector<std::uint64_t> CountReports(std::span<const int> reports, int Jt);

// Compensated column means over the selected rows of an n x d user-major
// matrix; every row is selected when mask is empty. Zeros if none selected.
std::vector<double> MeanOfRows(std::span<const double> rows, int d,
                               std::span<const std::uint8_t> mask);

}  // namespace parallel

}  // namespace ldpq::kernels

#endif  // LDPQ_KERNELS_H_
