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

#ifndef LDPQ_HADAMARD_H_
#define LDPQ_HADAMARD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ldpq/core.h"

namespace ldpq {

// Smallest power of two >= J + 1.
int PaddedSize(int J);

// Entry of the Sylvester-Hadamard matrix of order Jt, 1-based:
// (-1)^popcount((row - 1) & (col - 1)).
int HadamardEntry(int row, int col, int Jt);

// C_v = {w in [Jt] : H(v + 1, w) = +1}, ascending. |C_v| = Jt / 2 for v >= 1.
std::vector<int> RowSupport(int v, int Jt);

// In-place unnormalized Walsh-Hadamard transform: x <- H x.
void FwhtInPlace(std::span<double> x);
std::vector<double> Fwht(std::vector<double> x);

struct HadamardContext {
  int J;
  int Jt;
  double epsilon;
  double c_eps;

  static HadamardContext Create(int J, double epsilon);
};

// Report frequencies q(w) = #{i : z_i = w} / n over w in [Jt].
class ReportCounts {
 public:
  static ReportCounts FromReports(std::span<const int> reports, int Jt);
  static ReportCounts FromCounts(std::vector<std::uint64_t> counts);

  // Shard merge.
  void Merge(const ReportCounts& other);

  int Jt() const { return static_cast<int>(counts_.size()); }
  std::uint64_t n() const { return n_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::vector<double> Frequencies() const;

 private:
  explicit ReportCounts(std::vector<std::uint64_t> counts);

  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
};

// p_bar(v) = c_eps * sum_w H(v + 1, w) q(w) for v in [J] via one transform.
// With include_padding_rows the unused rows J + 2 .. Jt are decoded too, so
// the result has Jt - 1 entries (diagnostics only).
std::vector<double> Decode(const ReportCounts& counts,
                           const HadamardContext& ctx,
                           bool include_padding_rows = false);

// p_bar(v) = 2 c_eps (q(C_v) - 1/2).
double DecodeSubsetForm(const ReportCounts& counts, const HadamardContext& ctx,
                        int v);

struct SubgaussianCheckResult {
  bool pass = false;
  double variance_proxy = 0.0;  // sigma^2 = 4 c_eps^2
  // worst_tail_ratio[k] = max_v empirical P(|err| >= (k+1) sigma / sqrt(n))
  //                       / (2 exp(-(k+1)^2 / 2))
  std::vector<double> worst_tail_ratio;
  double worst_variance_ratio = 0.0;  // max_v var / (sigma^2 / n)
  double slack = 0.0;                 // 5 / sqrt(trials)
};

// Repeats the Hadamard-response pipeline `trials` times on fresh datasets
// drawn from p and checks the sub-Gaussian tail and variance of every
// coordinate of p_bar - p.
SubgaussianCheckResult SubgaussianCheck(const HadamardContext& ctx,
                                        const Distribution& p, std::size_t n,
                                        std::size_t trials,
                                        std::uint64_t seed);

}  // namespace ldpq

#endif  // LDPQ_HADAMARD_H_
