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

#pragma once

#include <functional>
#include <vector>

#include "qdrive/tensor_algebra.hpp"

// State propagation: exact unitary evolution via eigendecomposition,
// fixed-step RK4 integration of the master equation, and time-dependent
// Hamiltonian evolution for the classical-driving reduction.

namespace qdrive {

/// Jump operators, each already scaled by the square root of its rate.
/// Dissipator convention (no global 1/2):
///   D(rho) = sum_j { 2 L_j rho L_j^+  -  L_j^+ L_j rho  -  rho L_j^+ L_j }.
class LindbladSet {
 public:
  LindbladSet() = default;  // empty set: unitary limit
  explicit LindbladSet(std::vector<ComplexMatrix> jumps);

  bool empty() const { return jumps_.empty(); }
  std::size_t size() const { return jumps_.size(); }
  Eigen::Index dim() const { return jumps_.empty() ? 0 : jumps_.front().rows(); }
  const std::vector<ComplexMatrix>& jumps() const { return jumps_; }
  /// sum_j L_j^+ L_j, cached at construction.
  const ComplexMatrix& anticommutator_part() const { return sum_ldag_l_; }

 private:
  std::vector<ComplexMatrix> jumps_;
  ComplexMatrix sum_ldag_l_;
};

/// Density-matrix samples along a time grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
};

/// Called at every accepted integrator step (t, rho(t)), including t = 0.
/// Lets callers accumulate observables on the fine grid without storing the
/// full state history.
using StepObserver = std::function<void(double, const ComplexMatrix&)>;

/// Hamiltonian provider for time-dependent evolution.
using HamiltonianProvider = std::function<ComplexMatrix(double)>;

/// U(t) = V exp(-i diag(lambda) t) V^+ from the eigendecomposition of h.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t);

/// Exact unitary evolution rho(t) = U(t) rho0 U(t)^+ at the grid times.
Trajectory evolve_unitary(const ComplexMatrix& rho0, const ComplexMatrix& h,
                          const std::vector<double>& grid);

/// D(rho) for the stated convention. Traceless, Hermitian for Hermitian rho.
ComplexMatrix apply_dissipator(const ComplexMatrix& rho, const LindbladSet& ls);

/// Adjoint action on an observable: Tr{D(rho) X} = Tr{rho adjoint_dissipator(ls, X)}.
ComplexMatrix adjoint_dissipator(const LindbladSet& ls, const ComplexMatrix& x);

/// Fixed-step RK4 integration of
///   drho/dt = -i [h, rho] + D(rho)
/// sampled at the grid times; `step` must (approximately) divide each grid
/// interval. Throws IntegrationError when the trace drifts beyond 1e-6 or an
/// eigenvalue of rho sinks below -1e-6, suggesting a smaller step.
Trajectory evolve_lindblad(const ComplexMatrix& rho0, const ComplexMatrix& h,
                           const LindbladSet& ls, const std::vector<double>& grid,
                           double step, const StepObserver& observer = {});

/// RK4 with midpoint Hamiltonian evaluations for drho/dt = -i [h(t), rho];
/// the provider is sampled at t, t + step/2 and t + step for the stages.
Trajectory evolve_time_dependent(const ComplexMatrix& rho0,
                                 const HamiltonianProvider& h_of_t,
                                 const std::vector<double>& grid, double step,
                                 const StepObserver& observer = {});

/// Exact unitary evolution cast in the eigenbasis once, so expectation values
/// of fixed kernels cost O(dim^2) per sample instead of a propagator build.
class SpectralPropagator {
 public:
  SpectralPropagator(const ComplexMatrix& h, const ComplexMatrix& rho0);

  /// Tr{rho(t) K_j} for every registered kernel at time t.
  /// Kernels are registered once; their eigenbasis transforms are cached.
  std::size_t add_kernel(const ComplexMatrix& k);
  std::vector<Complex> expectations(double t) const;

  /// rho(t) in the original basis.
  ComplexMatrix state(double t) const;

 private:
  EigenSystem eig_;
  ComplexMatrix rho_eig_;                 // V^+ rho0 V
  std::vector<ComplexMatrix> coeff_;      // G_j(p,q) = rho_eig(p,q) * K_eig_j(q,p)
  mutable ComplexVector phase_;           // workspace e^{-i lambda_p t}
  mutable ComplexVector work_;
};

}  // namespace qdrive
