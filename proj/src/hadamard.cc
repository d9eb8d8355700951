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

#include "ldpq/hadamard.h"

#include <bit>
#include <cmath>
#include <string>

#include "ldpq/errors.h"
#include "ldpq/kernels.h"

namespace ldpq {

int PaddedSize(int J) {
  if (J < 1) throw DomainError("padded size needs J >= 1");
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(J) + 1u));
}

int HadamardEntry(int row, int col, int Jt) {
  if (Jt < 1 || !std::has_single_bit(static_cast<unsigned>(Jt))) {
    throw DomainError("Hadamard order must be a power of two");
  }
  if (row < 1 || row > Jt || col < 1 || col > Jt) {
    throw DomainError("Hadamard index outside [1, " + std::to_string(Jt) + "]");
  }
  const unsigned bits =
      static_cast<unsigned>(row - 1) & static_cast<unsigned>(col - 1);
  return (std::popcount(bits) & 1) ? -1 : 1;
}

std::vector<int> RowSupport(int v, int Jt) {
  if (v < 1 || v + 1 > Jt) {
    throw DomainError("row support needs 1 <= v <= Jt - 1");
  }
  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(Jt / 2));
  for (int w = 1; w <= Jt; ++w) {
    if (HadamardEntry(v + 1, w, Jt) > 0) support.push_back(w);
  }
  return support;
}

void FwhtInPlace(std::span<double> x) {
  const std::size_t size = x.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw DomainError("transform length must be a power of two");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = x[i];
        const double b = x[i + half];
        x[i] = a + b;
        x[i + half] = a - b;
      }
    }
  }
}

std::vector<double> Fwht(std::vector<double> x) {
  FwhtInPlace(x);
  return x;
}

HadamardContext HadamardContext::Create(int J, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  return HadamardContext{J, PaddedSize(J), epsilon,
                         1.0 / std::tanh(epsilon / 2.0)};
}

ReportCounts::ReportCounts(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty() || !std::has_single_bit(counts_.size())) {
    throw DomainError("report counts length must be a power of two");
  }
  for (auto c : counts_) n_ += c;
}

ReportCounts ReportCounts::FromReports(std::span<const int> reports, int Jt) {
  if (Jt < 1) throw DomainError("Jt must be >= 1");
  return ReportCounts(kernels::serial::CountReports(reports, Jt));
}

ReportCounts ReportCounts::FromCounts(std::vector<std::uint64_t> counts) {
  return ReportCounts(std::move(counts));
}

void ReportCounts::Merge(const ReportCounts& other) {
  if (other.counts_.size() != counts_.size()) {
    throw DomainError("cannot merge report counts of different lengths");
  }
  for (std::size_t w = 0; w < counts_.size(); ++w) counts_[w] += other.counts_[w];
  n_ += other.n_;
}

std::vector<double> ReportCounts::Frequencies() const {
  std::vector<double> q(counts_.size(), 0.0);
  if (n_ == 0) return q;
  const double n = static_cast<double>(n_);
  for (std::size_t w = 0; w < counts_.size(); ++w) {
    q[w] = static_cast<double>(counts_[w]) / n;
  }
  return q;
}

std::vector<double> Decode(const ReportCounts& counts,
                           const HadamardContext& ctx,
                           bool include_padding_rows) {
  if (counts.Jt() != ctx.Jt) {
    throw DomainError("report counts have length " +
                      std::to_string(counts.Jt()) + ", expected " +
                      std::to_string(ctx.Jt));
  }
  std::vector<double> transformed = Fwht(counts.Frequencies());
  const int rows = include_padding_rows ? ctx.Jt - 1 : ctx.J;
  std::vector<double> p_bar(static_cast<std::size_t>(rows));
  // Input v uses row v + 1, i.e. 0-based row v.
  for (int v = 1; v <= rows; ++v) p_bar[v - 1] = ctx.c_eps * transformed[v];
  return p_bar;
}

double DecodeSubsetForm(const ReportCounts& counts, const HadamardContext& ctx,
                        int v) {
  if (v < 1 || v > ctx.J) {
    throw DomainError("element " + std::to_string(v) + " outside [1, " +
                      std::to_string(ctx.J) + "]");
  }
  if (counts.Jt() != ctx.Jt) throw DomainError("report counts length mismatch");
  const auto q = counts.Frequencies();
  double mass = 0.0;
  for (int w : RowSupport(v, ctx.Jt)) mass += q[w - 1];
  return 2.0 * ctx.c_eps * (mass - 0.5);
}

SubgaussianCheckResult SubgaussianCheck(const HadamardContext& ctx,
                                        const Distribution& p, std::size_t n,
                                        std::size_t trials,
                                        std::uint64_t seed) {
  if (trials < 1000) throw DomainError("sub-Gaussian check needs >= 1000 trials");
  if (p.J() != ctx.J) throw DomainError("distribution size does not match J");
  constexpr int kLevels = 3;
  SubgaussianCheckResult result;
  result.variance_proxy = 4.0 * ctx.c_eps * ctx.c_eps;
  result.slack = 5.0 / std::sqrt(static_cast<double>(trials));
  const double scale = std::sqrt(result.variance_proxy / static_cast<double>(n));

  const auto J = static_cast<std::size_t>(ctx.J);
  std::vector<std::size_t> exceed(J * kLevels, 0);
  std::vector<double> sum_sq(J, 0.0);
  std::vector<int> reports(n);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = DeriveSeed(seed, t);
    Rng data_rng = MakeRng(DeriveSeed(trial_seed, StreamTag::kDataset));
    const Dataset data = SampleDataset(p, n, data_rng);
    kernels::parallel::HadamardReports(data.inputs(), ctx.J, ctx.epsilon,
                                       DeriveSeed(trial_seed, StreamTag::kUsers),
                                       reports);
    const auto p_bar = Decode(ReportCounts::FromReports(reports, ctx.Jt), ctx);
    for (std::size_t v = 0; v < J; ++v) {
      const double err = p_bar[v] - p.masses()[v];
      sum_sq[v] += err * err;
      for (int k = 0; k < kLevels; ++k) {
        if (std::abs(err) >= (k + 1) * scale) ++exceed[v * kLevels + k];
      }
    }
  }

  result.pass = true;
  const double T = static_cast<double>(trials);
  for (int k = 0; k < kLevels; ++k) {
    const double tail_bound = 2.0 * std::exp(-0.5 * (k + 1) * (k + 1));
    double worst = 0.0;
    for (std::size_t v = 0; v < J; ++v) {
      worst = std::max(worst, exceed[v * kLevels + k] / T / tail_bound);
    }
    result.worst_tail_ratio.push_back(worst);
    if (worst > 1.0 + result.slack) result.pass = false;
  }
  for (std::size_t v = 0; v < J; ++v) {
    result.worst_variance_ratio = std::max(
        result.worst_variance_ratio, sum_sq[v] / T / (scale * scale));
  }
  if (result.worst_variance_ratio > 1.0 + result.slack) result.pass = false;
  return result;
}

}  // namespace ldpq
