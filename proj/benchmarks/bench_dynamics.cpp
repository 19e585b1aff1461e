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

#include "qdrive/energetics.hpp"
#include "qdrive/jaynes_cummings.hpp"

namespace {

using namespace qdrive;

ComplexMatrix excited_qubit() {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  return rho;
}

// One time unit of the damped-excitation model at the production step.
void BM_LindbladEvolution(benchmark::State& state) {
  const JCParams params{1.0, 0.5, int(state.range(0))};
  const HilbertLayout layout = jc_layout(params);
  const ComplexMatrix h = assemble_total(build_jc(params), layout);
  const LindbladSet ls = golden_rule_dissipator(params, 0.2);
  const ComplexMatrix rho0 = product_state(
      {fock_state(0, params.n_trunc).density(), excited_qubit()}, layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_lindblad(rho0, h, ls, {0.0, 1.0}, 1e-3));
  }
}
BENCHMARK(BM_LindbladEvolution)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ApplyDissipator(benchmark::State& state) {
  const JCParams params{1.0, 0.5, int(state.range(0))};
  const HilbertLayout layout = jc_layout(params);
  const LindbladSet ls = golden_rule_dissipator(params, 0.2);
  const ComplexMatrix rho = product_state(
      {fock_state(0, params.n_trunc).density(), excited_qubit()}, layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_dissipator(rho, ls));
  }
}
BENCHMARK(BM_ApplyDissipator)->Arg(4)->Arg(16);

// Spectral-path work ledger for a large coherent-state truncation.
void BM_UnitaryLedger(benchmark::State& state) {
  const JCParams params{1.0, 0.5, int(state.range(0))};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix rho0 = product_state(
      {coherent_state(1.5, params.n_trunc).density(), excited_qubit()}, layout);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unitary_energy_ledger(ch, layout, rho0, 1e-3, 1000, 10));
  }
}
BENCHMARK(BM_UnitaryLedger)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_GoldenRuleBuild(benchmark::State& state) {
  const JCParams params{1.0, 0.5, int(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(golden_rule_dissipator(params, 0.2));
  }
}
BENCHMARK(BM_GoldenRuleBuild)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
