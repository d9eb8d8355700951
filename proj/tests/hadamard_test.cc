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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "ldpq/errors.h"
#include "ldpq/random.h"
#include "ldpq/randomizers.h"
#include "oracles.h"

namespace ldpq {
namespace {

std::vector<double> RandomVector(int size, Rng& rng) {
  std::vector<double> x(size);
  for (double& v : x) v = 2.0 * Uniform01(rng) - 1.0;
  return x;
}

TEST(PaddedSizeTest, Examples) {
  EXPECT_EQ(PaddedSize(1), 2);
  EXPECT_EQ(PaddedSize(7), 8);
  EXPECT_EQ(PaddedSize(8), 16);
}

TEST(PaddedSizeTest, PowerOfTwoWithinRange) {
  for (int J = 1; J <= 1000000; J += (J < 5000 ? 1 : 997)) {
    const int Jt = PaddedSize(J);
    ASSERT_TRUE(std::has_single_bit(static_cast<unsigned>(Jt))) << J;
    ASSERT_GE(Jt, J + 1);
    ASSERT_LE(Jt, 2 * J + 1);
  }
}

TEST(HadamardEntryTest, Examples) {
  for (int col = 1; col <= 8; ++col) EXPECT_EQ(HadamardEntry(1, col, 8), 1);
  EXPECT_EQ(HadamardEntry(2, 1, 4), 1);
  EXPECT_EQ(HadamardEntry(2, 2, 4), -1);
  EXPECT_EQ(HadamardEntry(2, 3, 4), 1);
  EXPECT_EQ(HadamardEntry(2, 4, 4), -1);
  EXPECT_THROW(HadamardEntry(5, 1, 4), DomainError);
  EXPECT_THROW(HadamardEntry(1, 0, 4), DomainError);
}

TEST(HadamardEntryTest, MatchesRecursiveDoublingAndIsOrthogonal) {
  for (int Jt : {2, 4, 8, 16}) {
    const auto H = testing::SylvesterByDoubling(Jt);
    for (int i = 1; i <= Jt; ++i) {
      for (int j = 1; j <= Jt; ++j) {
        ASSERT_EQ(HadamardEntry(i, j, Jt), H[i - 1][j - 1]);
        int dot = 0;
        for (int k = 1; k <= Jt; ++k) {
          dot += HadamardEntry(i, k, Jt) * HadamardEntry(j, k, Jt);
        }
        ASSERT_EQ(dot, i == j ? Jt : 0);
      }
    }
  }
}

TEST(RowSupportTest, ExamplesAndBalance) {
  EXPECT_EQ(RowSupport(1, 4), std::vector<int>({1, 3}));
  for (int Jt : {2, 4, 8, 16}) {
    for (int v = 1; v <= Jt - 1; ++v) {
      EXPECT_EQ(static_cast<int>(RowSupport(v, Jt).size()), Jt / 2);
    }
  }
  EXPECT_THROW(RowSupport(4, 4), DomainError);
  EXPECT_THROW(RowSupport(0, 4), DomainError);
}

TEST(RowSupportTest, PairwiseIntersectionsAreQuarter) {
  for (int Jt : {4, 8, 16}) {
    for (int u = 1; u < Jt; ++u) {
      for (int v = u + 1; v < Jt; ++v) {
        const auto a = RowSupport(u, Jt), b = RowSupport(v, Jt);
        std::vector<int> both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(both));
        EXPECT_EQ(static_cast<int>(both.size()), Jt / 4);
      }
    }
  }
}

TEST(FwhtTest, Examples) {
  EXPECT_EQ(Fwht({1, 0, 0, 0}), std::vector<double>({1, 1, 1, 1}));
  EXPECT_EQ(Fwht({1, 1, 1, 1}), std::vector<double>({4, 0, 0, 0}));
  EXPECT_THROW(Fwht({1, 2, 3}), DomainError);
}

TEST(FwhtTest, MatchesNaiveMultiply) {
  Rng rng = MakeRng(1);
  for (int Jt = 2; Jt <= 1024; Jt *= 2) {
    const auto x = RandomVector(Jt, rng);
    const auto fast = Fwht(x);
    for (int i = 1; i <= Jt; ++i) {
      double naive = 0.0;
      for (int j = 1; j <= Jt; ++j) naive += HadamardEntry(i, j, Jt) * x[j - 1];
      ASSERT_NEAR(fast[i - 1], naive, 1e-12) << Jt;
    }
  }
}

TEST(FwhtTest, InvolutionUpToScale) {
  Rng rng = MakeRng(2);
  const auto x = RandomVector(64, rng);
  const auto twice = Fwht(Fwht(x));
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(twice[i], 64 * x[i], 1e-9 * 64);
}

ReportCounts RandomCounts(int Jt, Rng& rng) {
  std::vector<std::uint64_t> counts(Jt);
  for (auto& c : counts) c = rng() % 50;
  counts[0] += 1;
  return ReportCounts::FromCounts(counts);
}

TEST(DecodeTest, UniformCountsDecodeToZero) {
  const HadamardContext ctx = HadamardContext::Create(7, 1.0);
  const auto p = Decode(ReportCounts::FromCounts(std::vector<std::uint64_t>(8, 3)), ctx);
  ASSERT_EQ(p.size(), 7u);
  for (double x : p) EXPECT_EQ(x, 0.0);
}

TEST(DecodeTest, AgreesWithSubsetForm) {
  Rng rng = MakeRng(3);
  for (int J : {3, 7, 12}) {
    const HadamardContext ctx = HadamardContext::Create(J, 0.6);
    for (int t = 0; t < 10; ++t) {
      const ReportCounts counts = RandomCounts(ctx.Jt, rng);
      const auto p = Decode(counts, ctx);
      for (int v = 1; v <= J; ++v) {
        EXPECT_NEAR(p[v - 1], DecodeSubsetForm(counts, ctx, v), 1e-12);
      }
    }
  }
}

TEST(DecodeTest, SubsetFormExamples) {
  const HadamardContext ctx = HadamardContext::Create(3, std::log(3.0));
  // C_1 = {1, 3} at Jt = 4; put 3/4 of the mass there.
  const ReportCounts counts = ReportCounts::FromCounts({3, 1, 3, 1});
  EXPECT_NEAR(DecodeSubsetForm(counts, ctx, 1), 1.0, 1e-12);
  const ReportCounts even = ReportCounts::FromCounts({1, 1, 1, 1});
  EXPECT_NEAR(DecodeSubsetForm(even, ctx, 2), 0.0, 1e-15);
  EXPECT_THROW(DecodeSubsetForm(even, ctx, 4), DomainError);
}

TEST(DecodeTest, AffineInCounts) {
  Rng rng = MakeRng(4);
  const HadamardContext ctx = HadamardContext::Create(5, 1.0);
  const ReportCounts a = RandomCounts(8, rng), b = RandomCounts(8, rng);
  ReportCounts merged = a;
  merged.Merge(b);
  const auto pa = Decode(a, ctx), pb = Decode(b, ctx), pm = Decode(merged, ctx);
  const double wa = static_cast<double>(a.n()) / merged.n();
  for (int v = 0; v < 5; ++v) {
    EXPECT_NEAR(pm[v], wa * pa[v] + (1 - wa) * pb[v], 1e-12);
  }
}

TEST(DecodeTest, PaddingRowsBehindFlag) {
  const HadamardContext ctx = HadamardContext::Create(5, 1.0);
  const ReportCounts counts = ReportCounts::FromCounts({1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(Decode(counts, ctx).size(), 5u);
  const auto full = Decode(counts, ctx, true);
  ASSERT_EQ(full.size(), 7u);
  const auto head = Decode(counts, ctx);
  for (int v = 0; v < 5; ++v) EXPECT_EQ(full[v], head[v]);
}

TEST(DecodeTest, RejectsMismatchedCounts) {
  const HadamardContext ctx = HadamardContext::Create(5, 1.0);
  EXPECT_THROW(Decode(ReportCounts::FromCounts({1, 2, 3, 4}), ctx), DomainError);
}

TEST(ReportCountsTest, FrequenciesSumToOne) {
  const ReportCounts counts = ReportCounts::FromReports(
      std::vector<int>{1, 2, 2, 4, 4, 4, 3}, 4);
  EXPECT_EQ(counts.n(), 7u);
  double total = 0.0;
  for (double q : counts.Frequencies()) total += q;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_THROW(ReportCounts::FromReports(std::vector<int>{5}, 4), DomainError);
}

TEST(UnbiasednessTest, ExactEnumeration) {
  Rng rng = MakeRng(5);
  for (int J : {3, 7, 15}) {
    for (double eps : {0.5, 1.0}) {
      for (int t = 0; t < 5; ++t) {
        std::vector<double> p(J);
        double total = 0.0;
        for (double& x : p) total += (x = Uniform01(rng));
        for (double& x : p) x /= total;
        const auto expected = testing::ExpectedHadamardDecode(p, eps);
        for (int v = 0; v < J; ++v) EXPECT_NEAR(expected[v], p[v], 1e-12);
      }
    }
  }
  const std::vector<double> p = {0.2, 0.3, 0.5};
  const auto expected = testing::ExpectedHadamardDecode(p, 1.0);
  for (int v = 0; v < 3; ++v) EXPECT_NEAR(expected[v], p[v], 1e-12);
}

TEST(UnbiasednessTest, LibraryChannelAndDecodeAreUnbiased) {
  // Feeds exact expected frequencies (as large integer counts) through the
  // library channel and decoder.
  const int J = 7;
  const double eps = 1.0;
  const std::vector<double> p = {0.05, 0.1, 0.15, 0.2, 0.25, 0.15, 0.1};
  const HadamardChannel channel(J, eps);
  const HadamardContext ctx = HadamardContext::Create(J, eps);
  std::vector<double> q(ctx.Jt, 0.0);
  for (int v = 1; v <= J; ++v) {
    for (int o = 0; o < ctx.Jt; ++o) q[o] += p[v - 1] * channel.Probability(v, o);
  }
  auto transformed = Fwht(q);
  for (int v = 1; v <= J; ++v) {
    EXPECT_NEAR(ctx.c_eps * transformed[v], p[v - 1], 1e-12);
  }
}

TEST(SubgaussianCheckTest, PassesForUniformAndPointMass) {
  const HadamardContext ctx = HadamardContext::Create(7, 1.0);
  const auto uniform = Distribution::Create(std::vector<double>(7, 1.0 / 7));
  const auto point = Distribution::Create({0, 0, 1, 0, 0, 0, 0});
  for (const auto& p : {uniform, point}) {
    const SubgaussianCheckResult r = SubgaussianCheck(ctx, p, 500, 1000, 11);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.variance_proxy, 4 * ctx.c_eps * ctx.c_eps, 1e-12);
    EXPECT_EQ(r.worst_tail_ratio.size(), 3u);
  }
  EXPECT_THROW(SubgaussianCheck(ctx, uniform, 500, 999, 1), DomainError);
}

}  // namespace
}  // namespace ldpq
