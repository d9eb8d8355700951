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

#include "ldpq/randomizers.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ldpq/errors.h"
#include "ldpq/hadamard.h"

namespace ldpq {
namespace {

constexpr double kAuditSlack = 1e-9;

void CheckInput(int v, int J) {
  if (v < 1 || v > J) {
    throw DomainError("input " + std::to_string(v) + " outside [1, " +
                      std::to_string(J) + "]");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

double GaussianSigma2(double r, const PrivacyBudget& budget) {
  if (!(budget.delta > 0.0)) {
    throw DomainError("the Gaussian mechanism needs delta > 0");
  }
  return 2.0 * r * r * std::log(2.0 / budget.delta) /
         (budget.epsilon * budget.epsilon);
}

GaussianReport RandomizeGaussianWithSigma2(const QueryMatrix& A, int v,
                                           double sigma2, Rng& rng) {
  CheckInput(v, A.J());
  if (!(sigma2 >= 0.0)) throw DomainError("noise variance must be >= 0");
  const double sigma = std::sqrt(sigma2);
  const auto col = A.column(v);
  GaussianReport report{std::vector<double>(col.begin(), col.end())};
  for (double& y : report.vector) y += sigma * StandardNormal(rng);
  return report;
}

GaussianReport RandomizeGaussian(const QueryMatrix& A, int v,
                                 const PrivacyBudget& budget, Rng& rng) {
  return RandomizeGaussianWithSigma2(A, v, GaussianSigma2(A.r(), budget), rng);
}

void CheckRejSampParameters(double epsilon, std::size_t n) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (epsilon > 1.0) {
    throw DomainError("rejection-sampling protocol requires epsilon <= 1");
  }
  if (n < 2) throw DomainError("rejection-sampling protocol requires n >= 2");
}

double RejSampSigma2(double r, double epsilon, std::size_t n) {
  return 4.0 * r * r * std::log(static_cast<double>(n)) / (epsilon * epsilon);
}

double RejSampLogTwiceEta(std::span<const double> a_v,
                          std::span<const double> y, double sigma2) {
  return (Dot(a_v, y) - 0.5 * Dot(a_v, a_v)) / sigma2;
}

double RejSampEta(std::span<const double> a_v, std::span<const double> y,
                  double sigma2) {
  return 0.5 * std::exp(RejSampLogTwiceEta(a_v, y, sigma2));
}

bool InAcceptanceWindow(double log_twice_eta, double epsilon) {
  return std::abs(log_twice_eta) <= epsilon / 4.0;
}

RejSampReport RandomizeRejSamp(const QueryMatrix& A, int v, double epsilon,
                               std::size_t n, Rng& rng) {
  CheckRejSampParameters(epsilon, n);
  CheckInput(v, A.J());
  const double sigma2 = RejSampSigma2(A.r(), epsilon, n);
  const double sigma = std::sqrt(sigma2);
  std::vector<double> y(static_cast<std::size_t>(A.d()));
  for (double& yk : y) yk = sigma * StandardNormal(rng);

  const double log_twice_eta = RejSampLogTwiceEta(A.column(v), y, sigma2);
  // The Bernoulli draw happens only inside the window, as in the procedure.
  bool accept = false;
  if (InAcceptanceWindow(log_twice_eta, epsilon)) {
    accept = Bernoulli(0.5 * std::exp(log_twice_eta), rng);
  }
  if (!accept) return RejSampReport{};
  return RejSampReport{std::move(y)};
}

HadamardReport RandomizeHadamard(int v, int J, double epsilon, Rng& rng) {
  CheckInput(v, J);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const int Jt = PaddedSize(J);
  const int log2_jt = std::countr_zero(static_cast<unsigned>(Jt));

  // z in C_v with probability e^eps / (e^eps + 1), then uniform inside the
  // chosen half. Row v + 1 has 0-based index v; flipping the lowest set bit of
  // v in the column index toggles membership, which maps a uniform column onto
  // a uniform element of either half.
  const bool in_support = Bernoulli(1.0 / (1.0 + std::exp(-epsilon)), rng);
  unsigned col = log2_jt == 0 ? 0u : static_cast<unsigned>(rng() >> (64 - log2_jt));
  const unsigned row = static_cast<unsigned>(v);
  const bool member = (std::popcount(row & col) & 1) == 0;
  if (member != in_support) col ^= row & (~row + 1u);
  return HadamardReport{static_cast<int>(col) + 1};
}

double RrBiasConstant(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  // (e^eps + 1) / (e^eps - 1) = 1 / tanh(eps / 2)
  return 1.0 / std::tanh(epsilon / 2.0);
}

double AdaptivePlusProbability(const QueryVector& q, int v, double epsilon) {
  CheckInput(v, q.J());
  const double scale = RrBiasConstant(epsilon) * q.r();
  const double p = 0.5 * (1.0 + q.at(v) / scale);
  return std::clamp(p, 0.0, 1.0);
}

AdaptiveReport RandomizeAdaptive(const QueryVector& q, int v, double epsilon,
                                 Rng& rng) {
  const double p_plus = AdaptivePlusProbability(q, v, epsilon);
  const double magnitude = RrBiasConstant(epsilon) * q.r();
  return AdaptiveReport{Bernoulli(p_plus, rng) ? magnitude : -magnitude};
}

HadamardChannel::HadamardChannel(int J, double epsilon)
    : J_(J), padded_(PaddedSize(J)) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double half = padded_ / 2.0;
  in_support_ = 1.0 / (half * (1.0 + std::exp(-epsilon)));
  off_support_ = 1.0 / (half * (std::exp(epsilon) + 1.0));
}

double HadamardChannel::Probability(int v, int o) const {
  CheckInput(v, J_);
  return HadamardEntry(v + 1, o + 1, padded_) > 0 ? in_support_ : off_support_;
}

AdaptiveChannel::AdaptiveChannel(QueryVector q, double epsilon)
    : AdaptiveChannel(std::move(q), epsilon, RrBiasConstant(epsilon)) {}

AdaptiveChannel::AdaptiveChannel(QueryVector q, double /*epsilon*/,
                                 double c_eps)
    : q_(std::move(q)), c_eps_(c_eps) {}

double AdaptiveChannel::Probability(int v, int o) const {
  CheckInput(v, q_.J());
  const double p_plus =
      std::clamp(0.5 * (1.0 + q_.at(v) / (c_eps_ * q_.r())), 0.0, 1.0);
  return o == 1 ? p_plus : 1.0 - p_plus;
}

LdpAuditResult AuditFiniteLdp(const FiniteOutputRandomizer& randomizer,
                              double epsilon) {
  if (!randomizer.has_exact_probabilities()) {
    throw UnsupportedError(
        "audit needs a randomizer with exact output probabilities");
  }
  LdpAuditResult result;
  const int inputs = randomizer.input_count();
  const int outputs = randomizer.output_count();
  std::vector<double> table(static_cast<std::size_t>(inputs) * outputs);
  for (int v = 1; v <= inputs; ++v) {
    for (int o = 0; o < outputs; ++o) {
      table[static_cast<std::size_t>(v - 1) * outputs + o] =
          randomizer.Probability(v, o);
    }
  }
  for (int v = 1; v <= inputs; ++v) {
    for (int w = 1; w <= inputs; ++w) {
      if (v == w) continue;
      for (int o = 0; o < outputs; ++o) {
        const double pv = table[static_cast<std::size_t>(v - 1) * outputs + o];
        const double pw = table[static_cast<std::size_t>(w - 1) * outputs + o];
        double loss = 0.0;
        if (pv > 0.0 && pw == 0.0) {
          loss = std::numeric_limits<double>::infinity();
        } else if (pv > 0.0) {
          loss = std::log(pv / pw);
        }
        if (loss > result.max_log_ratio) {
          result.max_log_ratio = loss;
          result.worst_input = v;
          result.worst_other_input = w;
          result.worst_output = o;
        }
      }
    }
  }
  result.pass = result.max_log_ratio <= epsilon + kAuditSlack;
  return result;
}

double RejSampAcceptanceByQuadrature(double a, double sigma2,
                                     double epsilon) {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double sigma = std::sqrt(sigma2);
  const double column[1] = {a};
  auto integrand = [&](double y) {
    const double point[1] = {y};
    const double f0 = std::exp(-0.5 * y * y / sigma2) /
                      (sigma * std::sqrt(2.0 * std::acos(-1.0)));
    return RejSampEta(column, point, sigma2) * f0;
  };
  constexpr unsigned kMaxDepth = 15;
  constexpr double kRelTol = 1e-12;
  // Both report densities are below 1e-300 beyond 40 sigma.
  const double reach = std::abs(a) + 40.0 * sigma;
  if (a == 0.0) {
    // eta = 1/2 everywhere, so the window is the whole line.
    return Quadrature::integrate(integrand, -reach, 0.0, kMaxDepth, kRelTol) +
           Quadrature::integrate(integrand, 0.0, reach, kMaxDepth, kRelTol);
  }
  // |a y - a^2 / 2| / sigma2 <= eps / 4  <=>  |y - a / 2| <= eps sigma2 / (4 |a|)
  const double half_width = epsilon * sigma2 / (4.0 * std::abs(a));
  const double lo = std::max(a / 2.0 - half_width, -reach);
  const double hi = std::min(a / 2.0 + half_width, reach);
  // Split at the mean of the accepted density for accuracy on wide windows.
  const double mid = std::clamp(a, lo, hi);
  return Quadrature::integrate(integrand, lo, mid, kMaxDepth, kRelTol) +
         Quadrature::integrate(integrand, mid, hi, kMaxDepth, kRelTol);
}

RejSampBitAuditResult AuditRejSampBit(const QueryMatrix& A, double epsilon,
                                      std::size_t n) {
  CheckRejSampParameters(epsilon, n);
  if (A.d() != 1) {
    throw UnsupportedError("rejection-bit audit is implemented for d = 1");
  }
  const double sigma2 = RejSampSigma2(A.r(), epsilon, n);
  RejSampBitAuditResult result;
  for (int v = 1; v <= A.J(); ++v) {
    result.acceptance.push_back(
        RejSampAcceptanceByQuadrature(A.entry(1, v), sigma2, epsilon));
  }
  for (double pv : result.acceptance) {
    for (double pw : result.acceptance) {
      result.max_log_ratio =
          std::max({result.max_log_ratio, std::log(pv / pw),
                    std::log((1.0 - pv) / (1.0 - pw))});
    }
  }
  result.pass = result.max_log_ratio <= epsilon;
  return result;
}

}  // namespace ldpq
