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

#ifndef LDPQ_CORE_H_
#define LDPQ_CORE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ldpq/random.h"

// Domain elements, query indices and Hadamard rows are 1-based everywhere in
// the public API (v in [1, J]). Containers exposed as spans are 0-based, so
// element v lives at position v - 1.
namespace ldpq {

// A probability vector over [J], J >= 2.
class Distribution {
 public:
  // Accepts non-negative masses whose sum is within 1e-9 of 1 and rescales
  // them to sum to 1. Anything else is a DomainError.
  static Distribution Create(std::vector<double> masses);

  int J() const { return static_cast<int>(masses_.size()); }
  std::span<const double> masses() const { return masses_; }
  double mass(int v) const { return masses_[v - 1]; }

  // Cumulative masses; cdf()[j] = P(X <= j + 1). The last entry is exactly 1.
  std::span<const double> cdf() const { return cdf_; }

 private:
  explicit Distribution(std::vector<double> masses);

  std::vector<double> masses_;
  std::vector<double> cdf_;
};

// n user inputs, each in [J].
class Dataset {
 public:
  static Dataset Create(std::vector<int> inputs, int J);

  std::size_t n() const { return inputs_.size(); }
  int J() const { return J_; }
  std::span<const int> inputs() const { return inputs_; }
  int input(std::size_t i) const { return inputs_[i]; }

 private:
  Dataset(std::vector<int> inputs, int J) : inputs_(std::move(inputs)), J_(J) {}

  std::vector<int> inputs_;
  int J_;
};

// d x J matrix whose columns a_j all have L2 norm at most r. Stored
// column-major so that column(v) is contiguous.
class QueryMatrix {
 public:
  static QueryMatrix FromRows(const std::vector<std::vector<double>>& rows,
                              double r);
  static QueryMatrix FromColumns(const std::vector<std::vector<double>>& cols,
                                 double r);
  static QueryMatrix Identity(int J, double r = 1.0);

  int d() const { return d_; }
  int J() const { return J_; }
  double r() const { return r_; }

  std::span<const double> column(int v) const {
    return {entries_.data() + static_cast<std::size_t>(v - 1) * d_,
            static_cast<std::size_t>(d_)};
  }
  double entry(int row, int col) const {
    return entries_[static_cast<std::size_t>(col - 1) * d_ + (row - 1)];
  }
  std::span<const double> column_major() const { return entries_; }

 private:
  QueryMatrix(int d, int J, double r, std::vector<double> entries);

  int d_;
  int J_;
  double r_;
  std::vector<double> entries_;
};

// A linear query q in R^J with ||q||_inf <= r.
class QueryVector {
 public:
  static QueryVector Create(std::vector<double> coords, double r);

  int J() const { return static_cast<int>(coords_.size()); }
  double r() const { return r_; }
  std::span<const double> coords() const { return coords_; }
  double at(int v) const { return coords_[v - 1]; }

 private:
  QueryVector(std::vector<double> coords, double r)
      : coords_(std::move(coords)), r_(r) {}

  std::vector<double> coords_;
  double r_;
};

// Empirical distribution of a dataset; entries are counts / n.
class Histogram {
 public:
  std::span<const double> masses() const { return masses_; }
  std::span<const std::size_t> counts() const { return counts_; }
  std::size_t n() const { return n_; }
  int J() const { return static_cast<int>(masses_.size()); }

 private:
  friend Histogram ComputeHistogram(const Dataset& data, int J);
  std::vector<std::size_t> counts_;
  std::vector<double> masses_;
  std::size_t n_ = 0;
};

struct PrivacyBudget {
  double epsilon;
  double delta;

  // epsilon > 0 and 0 <= delta < 1, otherwise DomainError.
  static PrivacyBudget Create(double epsilon, double delta = 0.0);
};

// n i.i.d. draws by inverse CDF; a uniform draw equal to a cumulative boundary
// resolves to the lower index.
Dataset SampleDataset(const Distribution& dist, std::size_t n, Rng& rng);

Histogram ComputeHistogram(const Dataset& data, int J);

// A * p.
std::vector<double> TrueAnswers(const QueryMatrix& A, std::span<const double> p);
std::vector<double> TrueAnswers(const QueryMatrix& A, const Distribution& p);

double L2Error(std::span<const double> estimate, std::span<const double> truth);
double LinfError(std::span<const double> estimate,
                 std::span<const double> truth);

// A * histogram(data): the optimal non-private estimator.
std::vector<double> NonprivateBaseline(const QueryMatrix& A,
                                       const Dataset& data);

// Neumaier-compensated running sum. Adding the same values in the same order
// gives bitwise identical results.
class CompensatedSum {
 public:
  void Add(double x);
  double Total() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ldpq

#endif  // LDPQ_CORE_H_
