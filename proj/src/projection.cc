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

#include "ldpq/projection.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ldpq/errors.h"

namespace ldpq {
namespace {

constexpr int kDefaultItersPerColumn = 50;
constexpr int kMinDefaultIters = 10000;
// Rebuild the iterate from its atom weights this often to stop drift.
constexpr int kRefreshPeriod = 64;

void CheckFinite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("projection target not finite");
  }
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Atom index 2j is +a_{j+1}, 2j + 1 is -a_{j+1}.
double AtomSign(int atom) { return (atom & 1) ? -1.0 : 1.0; }
int AtomColumn(int atom) { return atom / 2 + 1; }

// Gradient of 1/2 ||A x - t||^2 in coefficient space: g_j = <a_j, w - t>.
void ColumnCorrelations(const QueryMatrix& A, std::span<const double> residual,
                        std::vector<double>& g) {
  for (int j = 1; j <= A.J(); ++j) g[j - 1] = Dot(A.column(j), residual);
}

int ArgMaxAbs(const std::vector<double>& g) {
  int best = 0;
  for (int j = 1; j < static_cast<int>(g.size()); ++j) {
    if (std::abs(g[j]) > std::abs(g[best])) best = j;
  }
  return best;
}

void RebuildPoint(const QueryMatrix& A, const std::vector<double>& weights,
                  std::vector<double>& w) {
  std::fill(w.begin(), w.end(), 0.0);
  for (int atom = 0; atom < static_cast<int>(weights.size()); ++atom) {
    if (weights[atom] == 0.0) continue;
    const double scale = AtomSign(atom) * weights[atom];
    const auto col = A.column(AtomColumn(atom));
    for (std::size_t k = 0; k < w.size(); ++k) w[k] += scale * col[k];
  }
}

}  // namespace

PolytopeSpec PolytopeSpec::For(const QueryMatrix& A, double tolerance,
                               int max_iters) {
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (max_iters < 0) throw DomainError("max_iters must be >= 1");
  PolytopeSpec spec;
  spec.vertices = &A;
  spec.tolerance = tolerance;
  spec.max_iters = max_iters == 0
                       ? std::max(kDefaultItersPerColumn * A.J(), kMinDefaultIters)
                       : max_iters;
  return spec;
}

PolytopeProjection ProjectPolytope(const PolytopeSpec& spec,
                                   std::span<const double> target) {
  if (spec.vertices == nullptr) throw DomainError("polytope spec has no matrix");
  if (!(spec.tolerance > 0.0) || spec.max_iters < 1) {
    throw DomainError("invalid polytope spec");
  }
  const QueryMatrix& A = *spec.vertices;
  if (static_cast<int>(target.size()) != A.d()) {
    throw DomainError("target has " + std::to_string(target.size()) +
                      " entries, polytope lives in dimension " +
                      std::to_string(A.d()));
  }
  CheckFinite(target);

  const auto d = static_cast<std::size_t>(A.d());
  const int J = A.J();
  std::vector<double> weights(2 * static_cast<std::size_t>(J), 0.0);
  std::vector<double> w(d, 0.0);
  std::vector<double> residual(d);
  std::vector<double> g(static_cast<std::size_t>(J));
  std::vector<double> direction(d);

  auto refresh_residual = [&] {
    for (std::size_t k = 0; k < d; ++k) residual[k] = w[k] - target[k];
    ColumnCorrelations(A, residual, g);
  };

  // Start at the vertex chosen by the oracle at w = 0.
  refresh_residual();
  {
    const int j = ArgMaxAbs(g);
    const int atom = 2 * j + (g[j] > 0.0 ? 1 : 0);
    weights[atom] = 1.0;
    RebuildPoint(A, weights, w);
  }

  PolytopeProjection result;
  for (int iter = 1; iter <= spec.max_iters; ++iter) {
    refresh_residual();
    const int j_fw = ArgMaxAbs(g);
    const int fw_atom = 2 * j_fw + (g[j_fw] > 0.0 ? 1 : 0);
    const double fw_value = -std::abs(g[j_fw]);

    double inner = 0.0;  // <w - t, w>
    int away_atom = -1;
    double away_value = 0.0;
    for (int atom = 0; atom < 2 * J; ++atom) {
      if (weights[atom] <= 0.0) continue;
      const double value = AtomSign(atom) * g[AtomColumn(atom) - 1];
      inner += weights[atom] * value;
      if (away_atom < 0 || value > away_value) {
        away_atom = atom;
        away_value = value;
      }
    }
    result.gap = inner - fw_value;
    result.iterations = iter - 1;
    if (result.gap <= spec.tolerance) break;
    if (away_atom == fw_atom) break;  // only reachable with gap ~ 0

    const auto s = A.column(AtomColumn(fw_atom));
    const auto a = A.column(AtomColumn(away_atom));
    const double s_sign = AtomSign(fw_atom);
    const double a_sign = AtomSign(away_atom);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      direction[k] = s_sign * s[k] - a_sign * a[k];
      norm2 += direction[k] * direction[k];
    }
    if (norm2 == 0.0) break;
    const double step =
        std::clamp((away_value - fw_value) / norm2, 0.0, weights[away_atom]);
    if (step == weights[away_atom]) {
      weights[away_atom] = 0.0;  // drop step
    } else {
      weights[away_atom] -= step;
    }
    weights[fw_atom] += step;
    if (iter % kRefreshPeriod == 0) {
      RebuildPoint(A, weights, w);
    } else {
      for (std::size_t k = 0; k < d; ++k) w[k] += step * direction[k];
    }
    result.iterations = iter;
  }

  // Report the exact point of the final coefficients and its true gap.
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total > 1.0) {
    for (double& x : weights) x /= total;
  }
  result.coeffs.assign(static_cast<std::size_t>(J), 0.0);
  for (int j = 0; j < J; ++j) result.coeffs[j] = weights[2 * j] - weights[2 * j + 1];
  result.point = TrueAnswers(A, result.coeffs);
  w = result.point;
  refresh_residual();
  result.gap = Dot(g, result.coeffs) + std::abs(g[ArgMaxAbs(g)]);
  result.gap_exceeded = result.gap > spec.tolerance;
  return result;
}

std::vector<double> ProjectSimplex(std::span<const double> target) {
  if (target.empty()) throw DomainError("cannot project an empty vector");
  CheckFinite(target);
  {
    CompensatedSum sum;
    bool nonnegative = true;
    for (double x : target) {
      nonnegative = nonnegative && x >= 0.0;
      sum.Add(x);
    }
    if (nonnegative && sum.Total() == 1.0) {
      return std::vector<double>(target.begin(), target.end());
    }
  }
  std::vector<double> sorted(target.begin(), target.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  CompensatedSum prefix;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    prefix.Add(sorted[k]);
    const double candidate =
        (prefix.Total() - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    out[j] = std::max(target[j] - tau, 0.0);
  }
  return out;
}

std::vector<double> ProjectL1Ball(std::span<const double> target) {
  if (target.empty()) throw DomainError("cannot project an empty vector");
  CheckFinite(target);
  double norm1 = 0.0;
  for (double x : target) norm1 += std::abs(x);
  if (norm1 <= 1.0) return std::vector<double>(target.begin(), target.end());
  std::vector<double> magnitudes(target.size());
  for (std::size_t j = 0; j < target.size(); ++j) {
    magnitudes[j] = std::abs(target[j]);
  }
  std::vector<double> out = ProjectSimplex(magnitudes);
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (target[j] < 0.0) out[j] = -out[j];
  }
  return out;
}

ProjectionBoundCheck ProjectionErrorBoundCheck(const PolytopeSpec& spec,
                                               std::span<const double> coeffs,
                                               std::span<const double> noise) {
  if (spec.vertices == nullptr) throw DomainError("polytope spec has no matrix");
  const QueryMatrix& A = *spec.vertices;
  if (static_cast<int>(coeffs.size()) != A.J()) {
    throw DomainError("true answers must be given as J vertex coefficients");
  }
  double norm1 = 0.0;
  for (double x : coeffs) norm1 += std::abs(x);
  if (norm1 > 1.0 + 1e-12) {
    throw DomainError("vertex coefficients must have L1 norm <= 1");
  }
  if (static_cast<int>(noise.size()) != A.d()) {
    throw DomainError("noise dimension does not match the polytope");
  }
  const std::vector<double> y = TrueAnswers(A, coeffs);
  std::vector<double> noisy(y);
  for (std::size_t k = 0; k < noisy.size(); ++k) noisy[k] += noise[k];
  const PolytopeProjection proj = ProjectPolytope(spec, noisy);

  ProjectionBoundCheck check;
  const double dist = L2Error(proj.point, y);
  check.lhs = dist * dist;
  double dual = 0.0;
  for (int j = 1; j <= A.J(); ++j) {
    dual = std::max(dual, std::abs(Dot(noise, A.column(j))));
  }
  check.rhs = 4.0 * dual;
  return check;
}

}  // namespace ldpq
