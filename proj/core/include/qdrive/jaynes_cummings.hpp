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

#include <complex>
#include <vector>

#include "qdrive/classical_limit.hpp"
#include "qdrive/composite_model.hpp"
#include "qdrive/dynamics.hpp"
#include "qdrive/energetics.hpp"

// Resonant single-mode Jaynes-Cummings model on a truncated Fock space:
// the worked example for quantized driving. Closed-form work expressions,
// the golden-rule Lindblad construction, and the damped-excitation
// experiment live here.

namespace qdrive {

struct JCParams {
  double omega = 1.0;  // resonance frequency; the unit of energy and 1/time
  double g = 0.5;      // two-level/mode coupling, in units of omega
  int n_trunc = 2;     // Fock-space truncation (drive dimension)
};

void validate_jc(const JCParams& params);

/// Drive-mode state as Fock amplitudes a_n, n = 0 .. n_trunc-1.
/// Truncation deficits are reported, never silently renormalized, so series
/// and matrix computations truncate identically.
struct DriveState {
  ComplexVector amplitudes;

  double norm_squared() const { return amplitudes.squaredNorm(); }
  double mean_photon_number() const;
  ComplexMatrix density() const;  // |psi><psi|
};

/// Suggested truncation for mean photon number nbar: ceil(nbar + 10 sqrt(nbar) + 10).
int suggested_n_trunc(double nbar);

/// Truncated coherent state |alpha>. Throws TruncationError (naming the
/// required n_trunc) when the kept norm falls below 1 - 1e-8.
DriveState coherent_state(Complex alpha, int n_trunc);

/// Fock state |n>.
DriveState fock_state(int n, int n_trunc);

/// The resonant JC Hamiltonian split into composite parts:
///   h_S = (omega/2) sigma_z,  h_D = omega b^+ b,
///   h_SD = g (b (x) sigma_+ + b^+ (x) sigma_-)
/// with the coupling rewritten into Hermitian quadrature pairs
///   B_1 = (b + b^+)/sqrt(2),      A_1 = (g/sqrt(2)) sigma_x,
///   B_2 = i (b - b^+)/sqrt(2),    A_2 = (g/sqrt(2)) sigma_y,
/// whose sum reproduces the coupling exactly. Block diagonal in the
/// excitation number.
CompositeHamiltonian build_jc(const JCParams& params);

HilbertLayout jc_layout(const JCParams& params);

/// Rabi frequency of the n-excitation sector, g sqrt(n+1).
double rabi_frequency(const JCParams& params, int n);

/// Closed-form work for the unitary model, initial state |n_F> (x) |e>:
///   W(t) = -omega sin^2(Omega_n t),  Omega_n = g sqrt(n+1).
double fock_quantum_work(const JCParams& params, int n, double t);

/// Classical-drive work for a coherent state:  -omega sin^2(g |alpha| t).
double coherent_classical_work(const JCParams& params, Complex alpha, double t);

/// Quantum work for a coherent drive, truncated at n_trunc:
///   -omega e^{-|a|^2} sum_n (|a|^{2n}/n!) sin^2(Omega_n t).
/// Shows collapse and revival of the Rabi oscillations.
double coherent_quantum_work(const JCParams& params, Complex alpha, double t);

/// The classically driven two-level Hamiltonian
///   (omega/2) sigma_z + e^{-i omega t} S sigma_+ + e^{+i omega t} S* sigma_-
/// with S = g sum_n a_n* a_{n+1} sqrt(n+1) for the given drive state.
ComplexMatrix jc_classical_hamiltonian(const DriveState& state, const JCParams& params,
                                       double t);

/// S = g sum_n a_n* a_{n+1} sqrt(n+1).
Complex jc_drive_amplitude(const DriveState& state, const JCParams& params);

/// ClassicalDriveSpec for the JC model with the given initial drive state.
ClassicalDriveSpec jc_classical_spec(const DriveState& state, const JCParams& params);

/// Golden-rule jump operators between JC eigenstates: one operator
/// sqrt(gamma_R) |target><source| per ordered pair with eps_source > eps_target
/// and gamma_R = theta |<target| I_D (x) sigma_x |source>|^2 above 1e-14.
LindbladSet golden_rule_dissipator(const JCParams& params, double theta);

/// Damped-excitation experiment: |0_F> (x) |e> evolved under the golden-rule
/// dissipator, ledger accumulated at every step. Throws IntegrationError if
/// the powers have not all dropped below `stationary_tol` by t_max.
EnergyLedger damped_excitation_experiment(const JCParams& params, double theta,
                                          double t_max, double step,
                                          std::size_t stride = 1,
                                          double stationary_tol = 1e-6);

/// Paired quantum/classical work series for a coherent drive on a uniform
/// grid, with the characteristic time t_q = |alpha| / g.
struct QuantumClassicalComparison {
  std::vector<double> times;
  std::vector<double> w_q;
  std::vector<double> w_cl;
  double t_q;
};
QuantumClassicalComparison compare_quantum_classical(const JCParams& params, Complex alpha,
                                                     const std::vector<double>& grid);

}  // namespace qdrive
