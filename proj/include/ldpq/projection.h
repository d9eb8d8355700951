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

#ifndef LDPQ_PROJECTION_H_
#define LDPQ_PROJECTION_H_

#include <span>
#include <vector>

#include "ldpq/core.h"

namespace ldpq {

// The symmetric polytope A * B_1^J = conv{+-a_j}, plus solver settings.
// Holds a non-owning pointer; the matrix must outlive the spec.
struct PolytopeSpec {
  static constexpr double kDefaultTolerance = 1e-10;

  const QueryMatrix* vertices = nullptr;
  double tolerance = kDefaultTolerance;  // Frank-Wolfe duality gap target
  int max_iters = 0;

  // max_iters = 0 selects the default max(50 J, 10000).
  static PolytopeSpec For(const QueryMatrix& A,
                          double tolerance = kDefaultTolerance,
                          int max_iters = 0);
};

struct PolytopeProjection {
  std::vector<double> point;   // A * coeffs
  std::vector<double> coeffs;  // ||coeffs||_1 <= 1
  double gap = 0.0;            // duality gap at the returned point
  int iterations = 0;
  bool gap_exceeded = false;   // max_iters reached with gap > tolerance
};

// argmin_{w in A B_1^J} ||w - target||_2 by pairwise Frank-Wolfe over the
// atoms +-a_j with exact line search. The linear minimization oracle takes
// the lowest column index on ties.
PolytopeProjection ProjectPolytope(const PolytopeSpec& spec,
                                   std::span<const double> target);

// Exact Euclidean projection onto the probability simplex (sort and
// threshold). Members of the simplex whose entries already sum to exactly 1
// are returned unchanged.
std::vector<double> ProjectSimplex(std::span<const double> target);

// Exact Euclidean projection onto the unit L1 ball.
std::vector<double> ProjectL1Ball(std::span<const double> target);

struct ProjectionBoundCheck {
  double lhs = 0.0;  // ||y_hat - y||^2
  double rhs = 0.0;  // 4 max_j |<noise, a_j>|
};

// Projects y + noise with y = A * coeffs and evaluates both sides of the
// dual-norm error bound ||y_hat - y||^2 <= 4 max_j |<noise, a_j>|.
ProjectionBoundCheck ProjectionErrorBoundCheck(const PolytopeSpec& spec,
                                               std::span<const double> coeffs,
                                               std::span<const double> noise);

}  // namespace ldpq

#endif  // LDPQ_PROJECTION_H_
