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

#include <cstddef>
#include <ostream>
#include <vector>

#include "qdrive/composite_model.hpp"
#include "qdrive/dynamics.hpp"

// Energy bookkeeping for a quantized drive: instantaneous injected power,
// heat powers in exact-tripartite and reduced dissipator form, and cumulative
// ledgers with conservation cross-checks.
//
// Sign conventions: W_Q < 0 means energy flows from the system to the drive;
// Q_S, Q_D > 0 mean heat leaves for the environment. Conservation reads
// -d<H_D> = W_Q + Q_D at every instant.

namespace qdrive {

/// Cumulative time series for one run. All energies in units of the
/// resonance quantum, times in its inverse.
struct EnergyLedger {
  std::vector<double> times;
  std::vector<double> w_q;
  std::vector<double> q_s;
  std::vector<double> q_d;
  std::vector<double> q_tot;
  std::vector<double> h_d_expect;  // <H_D>(t), not the change
  std::vector<double> residual;    // |-(d<H_D>) - (w_q + q_d)|

  std::size_t size() const { return times.size(); }
};

/// Injected power on the S-D space:
///   -i Tr{ rho_sd [H_SD, H_D (x) I_S] }.
double injected_power(const ComplexMatrix& rho_sd, const ComplexMatrix& h_sd,
                      const ComplexMatrix& h_d_lifted);

/// Exact tripartite heat powers (explicit environment):
///   dQ_S/dt = -i Tr_{S+E}{rho_SE [H_SE, H_S (x) I_E]}
///             -i Tr{rho [I_D (x) H_SE + H_DE, H_SD (x) I_E]}
///   dQ_D/dt = -i Tr{rho [H_DE, H_D (x) I_S (x) I_E]}
struct HeatPowers {
  double q_s;
  double q_d;
};
HeatPowers exact_heat_powers(const ComplexMatrix& rho, const CompositeHamiltonian& ch,
                             const HilbertLayout& layout);

/// Reduced (dissipator-form) heat powers on the S-D space:
///   dQ_S/dt = -Tr{ D (I_D (x) H_S + H_SD) },  dQ_D/dt = -Tr{ D (H_D (x) I_S) },
/// where `diss` is the dissipator applied to the state.
HeatPowers reduced_heat_powers(const ComplexMatrix& diss, const ComplexMatrix& h_s_lifted,
                               const ComplexMatrix& h_sd, const ComplexMatrix& h_d_lifted);

/// -d<H_D>/dt through the Ehrenfest commutator with the assembled total
/// Hamiltonian. On a tripartite state this equals injected_power + dQ_D/dt
/// (the drive continuity equation); without drive-environment coupling it
/// reduces to the injected power alone.
double extracted_drive_power(const ComplexMatrix& rho, const CompositeHamiltonian& ch,
                             const HilbertLayout& layout);

/// Streaming ledger accumulation: feed (t, rho) samples in time order; powers
/// are evaluated at every sample and integrated by composite trapezoid.
/// Rows are stored at sample indices divisible by `stride`.
class LedgerAccumulator {
 public:
  /// Bipartite S-D mode; `ls` may be empty (unitary limit).
  LedgerAccumulator(const CompositeHamiltonian& ch, const HilbertLayout& layout,
                    const LindbladSet& ls, std::size_t stride = 1);
  /// Explicit-environment mode (tripartite layout, Eqs. of the exact form).
  LedgerAccumulator(const CompositeHamiltonian& ch, const HilbertLayout& layout,
                    std::size_t stride = 1);

  void add(double t, const ComplexMatrix& rho);
  /// Instantaneous powers at the last added sample.
  double last_wq_power() const { return p_wq_; }
  double last_qs_power() const { return p_qs_; }
  double last_qd_power() const { return p_qd_; }

  EnergyLedger finish();

 private:
  void init_kernels(const CompositeHamiltonian& ch, const HilbertLayout& layout,
                    const LindbladSet* ls);
  void store_row(double t);

  std::size_t stride_;
  bool explicit_env_ = false;
  // Fixed Hermitian kernels; every power is Tr{rho K}.
  ComplexMatrix k_wq_;
  ComplexMatrix k_qs_;
  ComplexMatrix k_qd_;
  ComplexMatrix k_qtot_check_;  // single-trace dQ_tot kernel, explicit-E mode
  ComplexMatrix h_d_lift_;
  bool have_sample_ = false;
  std::size_t index_ = 0;
  double t_prev_ = 0.0;
  double p_wq_ = 0.0, p_qs_ = 0.0, p_qd_ = 0.0;
  double w_q_ = 0.0, q_s_ = 0.0, q_d_ = 0.0;
  double h_d_first_ = 0.0, h_d_last_ = 0.0;
  double t_last_ = 0.0;
  bool last_row_stored_ = false;
  EnergyLedger ledger_;
};

/// Ledger over a materialized trajectory. In bipartite mode pass the
/// LindbladSet that generated it (empty for unitary evolution); in explicit-E
/// mode pass a tripartite layout and no set.
EnergyLedger accumulate_ledger(const Trajectory& traj, const CompositeHamiltonian& ch,
                               const HilbertLayout& layout, const LindbladSet& ls,
                               std::size_t stride = 1);
EnergyLedger accumulate_ledger(const Trajectory& traj, const CompositeHamiltonian& ch,
                               const HilbertLayout& layout, std::size_t stride = 1);

/// Unitary-evolution ledger on a uniform grid, evaluated in the eigenbasis of
/// the assembled Hamiltonian so large truncations stay cheap. Samples every
/// `step` from 0 to n_steps*step, stores every `stride`-th row.
EnergyLedger unitary_energy_ledger(const CompositeHamiltonian& ch,
                                   const HilbertLayout& layout, const ComplexMatrix& rho0,
                                   double step, std::size_t n_steps,
                                   std::size_t stride = 1);

/// CSV serialization: unit comment line, header
/// t,W_Q,Q_S,Q_D,Q_tot,dH_D,residual (dH_D is the change of <H_D> from t=0),
/// full double precision.
void write_ledger_csv(const EnergyLedger& ledger, std::ostream& out);

}  // namespace qdrive
