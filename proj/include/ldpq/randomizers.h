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

#ifndef LDPQ_RANDOMIZERS_H_
#define LDPQ_RANDOMIZERS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ldpq/core.h"
#include "ldpq/random.h"

namespace ldpq {

// ---------------------------------------------------------------------------
// Gaussian randomizer, (epsilon, delta)-LDP.

struct GaussianReport {
  std::vector<double> vector;  // a_v + z, z ~ N(0, sigma2 I_d)
};

// 2 r^2 ln(2 / delta) / epsilon^2. Requires delta > 0.
double GaussianSigma2(double r, const PrivacyBudget& budget);

GaussianReport RandomizeGaussian(const QueryMatrix& A, int v,
                                 const PrivacyBudget& budget, Rng& rng);

// Same as RandomizeGaussian with an explicit noise variance; sigma2 = 0 is
// allowed and returns the column itself.
GaussianReport RandomizeGaussianWithSigma2(const QueryMatrix& A, int v,
                                           double sigma2, Rng& rng);

// ---------------------------------------------------------------------------
// Rejection-sampling randomizer, pure epsilon-LDP for epsilon <= 1.

// Either the accepted Gaussian draw or the bottom report (user dropped).
struct RejSampReport {
  std::optional<std::vector<double>> vector;

  bool dropped() const { return !vector.has_value(); }
};

// 4 r^2 ln(n) / epsilon^2, the Gaussian variance at delta = 2 / n^2.
double RejSampSigma2(double r, double epsilon, std::size_t n);

// log(2 eta) = (<a_v, y> - ||a_v||^2 / 2) / sigma2.
double RejSampLogTwiceEta(std::span<const double> a_v,
                          std::span<const double> y, double sigma2);

// eta = f_{a_v}(y) / (2 f_0(y)), evaluated through RejSampLogTwiceEta.
double RejSampEta(std::span<const double> a_v, std::span<const double> y,
                  double sigma2);

// True iff eta lies in [e^{-eps/4} / 2, e^{eps/4} / 2].
bool InAcceptanceWindow(double log_twice_eta, double epsilon);

RejSampReport RandomizeRejSamp(const QueryMatrix& A, int v, double epsilon,
                               std::size_t n, Rng& rng);

// Validates 0 < epsilon <= 1 and n >= 2.
void CheckRejSampParameters(double epsilon, std::size_t n);

// ---------------------------------------------------------------------------
// Hadamard-response randomizer (subset randomized response over C_v).

struct HadamardReport {
  int index;  // in [1, Jt]
};

HadamardReport RandomizeHadamard(int v, int J, double epsilon, Rng& rng);

// ---------------------------------------------------------------------------
// Two-point randomized response for one adaptive query.

struct AdaptiveReport {
  double value;  // +c_eps r or -c_eps r
};

// c_eps = (e^eps + 1) / (e^eps - 1).
double RrBiasConstant(double epsilon);

// P(report = +c_eps r) = (1 + q(v) / (c_eps r)) / 2.
double AdaptivePlusProbability(const QueryVector& q, int v, double epsilon);

AdaptiveReport RandomizeAdaptive(const QueryVector& q, int v, double epsilon,
                                 Rng& rng);

// ---------------------------------------------------------------------------
// Exact privacy audits.

// A local randomizer with finitely many outputs, indexed [0, output_count()).
class FiniteOutputRandomizer {
 public:
  virtual ~FiniteOutputRandomizer() = default;

  virtual int input_count() const = 0;
  virtual int output_count() const = 0;

  // Whether Probability() is exact. Audits refuse randomizers without it.
  virtual bool has_exact_probabilities() const { return true; }

  // P(output = o | input = v), v 1-based.
  virtual double Probability(int v, int o) const = 0;
};

class HadamardChannel : public FiniteOutputRandomizer {
 public:
  HadamardChannel(int J, double epsilon);

  int input_count() const override { return J_; }
  int output_count() const override { return padded_; }
  // Output o is the report index o + 1.
  double Probability(int v, int o) const override;

 private:
  int J_;
  int padded_;
  double in_support_;
  double off_support_;
};

class AdaptiveChannel : public FiniteOutputRandomizer {
 public:
  AdaptiveChannel(QueryVector q, double epsilon);

  int input_count() const override { return q_.J(); }
  int output_count() const override { return 2; }
  // Output 0 is -c_eps r, output 1 is +c_eps r.
  double Probability(int v, int o) const override;

 protected:
  AdaptiveChannel(QueryVector q, double epsilon, double c_eps);

 private:
  QueryVector q_;
  double c_eps_;
};

struct LdpAuditResult {
  bool pass = false;
  double max_log_ratio = 0.0;  // +inf if some output is impossible for one input
  int worst_input = 0;
  int worst_other_input = 0;
  int worst_output = 0;
};

// max over (v, v', o) of log(P(o | v) / P(o | v')); PASS iff <= eps + 1e-9.
// 0 / 0 counts as log-ratio 0 and x / 0 as +infinity.
LdpAuditResult AuditFiniteLdp(const FiniteOutputRandomizer& randomizer,
                              double epsilon);

// P(B = 1 | column value a) for the d = 1 rejection randomizer, computed by
// Gauss-Kronrod quadrature of eta(y) f_0(y) over the acceptance window.
double RejSampAcceptanceByQuadrature(double a, double sigma2, double epsilon);

struct RejSampBitAuditResult {
  bool pass = false;
  double max_log_ratio = 0.0;
  std::vector<double> acceptance;  // P(B = 1 | v) per input v
};

// Audit of the acceptance bit of the d = 1 rejection randomizer over the
// given column values (the 1 x J query matrix). PASS iff the max log-ratio
// over inputs and b in {0, 1} is <= epsilon.
RejSampBitAuditResult AuditRejSampBit(const QueryMatrix& A, double epsilon,
                                      std::size_t n);

}  // namespace ldpq

#endif  // LDPQ_RANDOMIZERS_H_
