// Copyright 2026 The qdrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "qdrive/composite_model.hpp"
#include "qdrive/tensor_algebra.hpp"

namespace {

using namespace qdrive;

ComplexMatrix hermitian(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return 0.5 * (m + m.adjoint());
}

void BM_Kron(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const ComplexMatrix a = hermitian(d, 1);
  const ComplexMatrix b = hermitian(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b));
  }
}
BENCHMARK(BM_Kron)->Arg(16)->Arg(64)->Arg(128);

void BM_PartialTrace(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const HilbertLayout layout = HilbertLayout::bipartite(d, 2);
  const ComplexMatrix m = hermitian(layout.total_dim(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace(m, layout, {Slot::System}));
  }
}
BENCHMARK(BM_PartialTrace)->Arg(16)->Arg(64)->Arg(128);

void BM_HermitianEig(benchmark::State& state) {
  const ComplexMatrix h = hermitian(state.range(0), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(h));
  }
}
BENCHMARK(BM_HermitianEig)->Arg(32)->Arg(128)->Arg(256);

void BM_UnitaryExp(benchmark::State& state) {
  const ComplexMatrix h = hermitian(state.range(0), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unitary_exp(h, 0.37));
  }
}
BENCHMARK(BM_UnitaryExp)->Arg(32)->Arg(128);

}  // namespace
