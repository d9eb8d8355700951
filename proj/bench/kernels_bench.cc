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

// Serial reference loops vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ldpq/kernels.h"
#include "ldpq/random.h"

namespace ldpq::kernels {
namespace {

std::vector<int> Inputs(std::size_t n, int J) {
  Rng rng = MakeRng(1);
  std::vector<int> v(n);
  for (int& x : v) x = 1 + static_cast<int>(rng() % static_cast<unsigned>(J));
  return v;
}

QueryMatrix Matrix(int d, int J) {
  Rng rng = MakeRng(2);
  std::vector<std::vector<double>> cols(J, std::vector<double>(d));
  for (auto& col : cols) {
    double norm = 0.0;
    for (double& x : col) norm += (x = StandardNormal(rng)) * x;
    for (double& x : col) x /= std::sqrt(norm);
  }
  return QueryMatrix::FromColumns(cols, 1.0);
}

template <Execution kExec>
void BM_GaussianReports(benchmark::State& state) {
  const int d = 50, J = 100;
  const QueryMatrix A = Matrix(d, J);
  const auto inputs = Inputs(static_cast<std::size_t>(state.range(0)), J);
  std::vector<double> out(inputs.size() * d);
  for (auto _ : state) {
    if constexpr (kExec == Execution::kSerial) {
      serial::GaussianReports(A, inputs, 15.2, 3, out);
    } else {
      parallel::GaussianReports(A, inputs, 15.2, 3, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution kExec>
void BM_RejSampReports(benchmark::State& state) {
  const int d = 50, J = 100;
  const QueryMatrix A = Matrix(d, J);
  const auto inputs = Inputs(static_cast<std::size_t>(state.range(0)), J);
  std::vector<double> out(inputs.size() * d);
  std::vector<std::uint8_t> accepted(inputs.size());
  for (auto _ : state) {
    if constexpr (kExec == Execution::kSerial) {
      serial::RejSampReports(A, inputs, 1.0, inputs.size(), 3, out, accepted);
    } else {
      parallel::RejSampReports(A, inputs, 1.0, inputs.size(), 3, out, accepted);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution kExec>
void BM_HadamardPipeline(benchmark::State& state) {
  const int J = 1000;
  const auto inputs = Inputs(static_cast<std::size_t>(state.range(0)), J);
  std::vector<int> out(inputs.size());
  for (auto _ : state) {
    if constexpr (kExec == Execution::kSerial) {
      serial::HadamardReports(inputs, J, 1.0, 3, out);
      benchmark::DoNotOptimize(serial::CountReports(out, 1024));
    } else {
      parallel::HadamardReports(inputs, J, 1.0, 3, out);
      benchmark::DoNotOptimize(parallel::CountReports(out, 1024));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution kExec>
void BM_MeanOfRows(benchmark::State& state) {
  const int d = 50;
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = MakeRng(4);
  std::vector<double> rows(n * d);
  for (double& x : rows) x = StandardNormal(rng);
  for (auto _ : state) {
    if constexpr (kExec == Execution::kSerial) {
      benchmark::DoNotOptimize(serial::MeanOfRows(rows, d, {}));
    } else {
      benchmark::DoNotOptimize(parallel::MeanOfRows(rows, d, {}));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_GaussianReports<Execution::kSerial>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_GaussianReports<Execution::kParallel>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_RejSampReports<Execution::kSerial>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_RejSampReports<Execution::kParallel>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_HadamardPipeline<Execution::kSerial>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_HadamardPipeline<Execution::kParallel>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_MeanOfRows<Execution::kSerial>)->Arg(2000)->Arg(20000);
BENCHMARK(BM_MeanOfRows<Execution::kParallel>)->Arg(2000)->Arg(20000);

}  // namespace
}  // namespace ldpq::kernels

BENCHMARK_MAIN();
