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

#include "qdrive/energetics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qdrive {

namespace {

const Complex kMinusI(0.0, -1.0);
constexpr Eigen::Index kMaxExplicitEnvDim = 8;

void require_tripartite(const HilbertLayout& layout, const char* where) {
  if (!layout.has_environment()) {
    std::ostringstream msg;
    msg << where << ": explicit-environment form needs a tripartite layout";
    throw ValidationError(msg.str());
  }
  if (layout.dim(Slot::Environment) > kMaxExplicitEnvDim) {
    std::ostringstream msg;
    msg << where << ": explicit-environment mode accepts E dims <= "
        << kMaxExplicitEnvDim << " only";
    throw ValidationError(msg.str());
  }
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double injected_power(const ComplexMatrix& rho_sd, const ComplexMatrix& h_sd,
                      const ComplexMatrix& h_d_lifted) {
  if (rho_sd.rows() != h_sd.rows() || rho_sd.rows() != h_d_lifted.rows()) {
    throw ValidationError("injected_power: dimension mismatch");
  }
  const ComplexMatrix kernel = kMinusI * commutator(h_sd, h_d_lifted);
  return real_expectation(rho_sd, kernel);
}

HeatPowers exact_heat_powers(const ComplexMatrix& rho, const CompositeHamiltonian& ch,
                             const HilbertLayout& layout) {
  require_tripartite(layout, "exact_heat_powers");
  validate_composite(ch, layout);
  if (rho.rows() != layout.total_dim()) {
    throw ValidationError("exact_heat_powers: state dim does not match layout");
  }
  const ComplexMatrix h_s_l = lift(ch.h_s, layout, Slot::System);
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  const Eigen::Index dim = layout.total_dim();
  const ComplexMatrix h_sd_l =
      ch.h_sd.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_sd.assemble(layout);
  const ComplexMatrix h_se_l =
      ch.h_se.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_se.assemble(layout);
  const ComplexMatrix h_de_l =
      ch.h_de.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_de.assemble(layout);

  const ComplexMatrix k_qs =
      kMinusI * (commutator(h_se_l, h_s_l) + commutator(h_se_l + h_de_l, h_sd_l));
  const ComplexMatrix k_qd = kMinusI * commutator(h_de_l, h_d_l);
  return HeatPowers{real_expectation(rho, k_qs), real_expectation(rho, k_qd)};
}

HeatPowers reduced_heat_powers(const ComplexMatrix& diss, const ComplexMatrix& h_s_lifted,
                               const ComplexMatrix& h_sd, const ComplexMatrix& h_d_lifted) {
  if (diss.rows() != h_s_lifted.rows() || diss.rows() != h_sd.rows() ||
      diss.rows() != h_d_lifted.rows()) {
    throw ValidationError("reduced_heat_powers: dimension mismatch");
  }
  const double q_s = -real_expectation(diss, ComplexMatrix(h_s_lifted + h_sd));
  const double q_d = -real_expectation(diss, h_d_lifted);
  return HeatPowers{q_s, q_d};
}

double extracted_drive_power(const ComplexMatrix& rho, const CompositeHamiltonian& ch,
                             const HilbertLayout& layout) {
  if (rho.rows() != layout.total_dim()) {
    throw ValidationError("extracted_drive_power: state dim does not match layout");
  }
  const ComplexMatrix h_total = assemble_total(ch, layout);
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  // -d<H_D>/dt = +i Tr{rho [H_D, H]} by the Ehrenfest theorem.
  const ComplexMatrix kernel = Complex(0.0, 1.0) * commutator(h_d_l, h_total);
  return real_expectation(rho, kernel);
}

LedgerAccumulator::LedgerAccumulator(const CompositeHamiltonian& ch,
                                     const HilbertLayout& layout, const LindbladSet& ls,
                                     std::size_t stride)
    : stride_(stride == 0 ? 1 : stride) {
  if (layout.has_environment()) {
    throw ValidationError(
        "LedgerAccumulator: dissipative mode runs on the bipartite S-D layout");
  }
  init_kernels(ch, layout, &ls);
}

LedgerAccumulator::LedgerAccumulator(const CompositeHamiltonian& ch,
                                     const HilbertLayout& layout, std::size_t stride)
    : stride_(stride == 0 ? 1 : stride), explicit_env_(true) {
  require_tripartite(layout, "LedgerAccumulator");
  init_kernels(ch, layout, nullptr);
}

void LedgerAccumulator::init_kernels(const CompositeHamiltonian& ch,
                                     const HilbertLayout& layout, const LindbladSet* ls) {
  validate_composite(ch, layout);
  const Eigen::Index dim = layout.total_dim();
  const ComplexMatrix h_s_l = lift(ch.h_s, layout, Slot::System);
  h_d_lift_ = lift(ch.h_d, layout, Slot::Drive);
  const ComplexMatrix h_sd_l =
      ch.h_sd.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_sd.assemble(layout);
  k_wq_ = kMinusI * commutator(h_sd_l, h_d_lift_);

  if (explicit_env_) {
    const ComplexMatrix h_se_l =
        ch.h_se.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_se.assemble(layout);
    const ComplexMatrix h_de_l =
        ch.h_de.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_de.assemble(layout);
    k_qs_ = kMinusI * (commutator(h_se_l, h_s_l) + commutator(h_se_l + h_de_l, h_sd_l));
    k_qd_ = kMinusI * commutator(h_de_l, h_d_lift_);
    k_qtot_check_ =
        kMinusI * commutator(ComplexMatrix(h_se_l + h_de_l),
                             ComplexMatrix(h_s_l + h_sd_l + h_d_lift_));
  } else if (ls != nullptr && !ls->empty()) {
    if (ls->dim() != dim) {
      throw ValidationError("LedgerAccumulator: LindbladSet dim does not match layout");
    }
    // Tr{D(rho) X} = Tr{rho adj(X)}: fold the dissipator into fixed kernels.
    k_qs_ = -adjoint_dissipator(*ls, ComplexMatrix(h_s_l + h_sd_l));
    k_qd_ = -adjoint_dissipator(*ls, h_d_lift_);
  } else {
    k_qs_ = ComplexMatrix::Zero(dim, dim);
    k_qd_ = ComplexMatrix::Zero(dim, dim);
  }
}

void LedgerAccumulator::add(double t, const ComplexMatrix& rho) {
  if (rho.rows() != k_wq_.rows()) {
    throw ValidationError("LedgerAccumulator: sample dim does not match the model");
  }
  if (have_sample_ && t <= t_prev_) {
    throw ValidationError("LedgerAccumulator: samples must be in ascending time order");
  }
  const double p_wq = real_expectation(rho, k_wq_);
  const double p_qs = k_qs_.size() > 0 ? real_expectation(rho, k_qs_) : 0.0;
  const double p_qd = k_qd_.size() > 0 ? real_expectation(rho, k_qd_) : 0.0;
  if (explicit_env_) {
    const double p_qtot = real_expectation(rho, k_qtot_check_);
    if (std::abs(p_qtot - (p_qs + p_qd)) >
        1e-8 * (1.0 + std::abs(p_qs) + std::abs(p_qd))) {
      std::ostringstream msg;
      msg << "LedgerAccumulator: single-trace dQ_tot cross-check failed at t = " << t;
      throw IntegrationError(msg.str());
    }
  }
  const double h_d_now = real_expectation(rho, h_d_lift_);

  if (!have_sample_) {
    have_sample_ = true;
    h_d_first_ = h_d_now;
  } else {
    const double dt = t - t_prev_;
    w_q_ += 0.5 * dt * (p_wq_ + p_wq);
    q_s_ += 0.5 * dt * (p_qs_ + p_qs);
    q_d_ += 0.5 * dt * (p_qd_ + p_qd);
  }
  p_wq_ = p_wq;
  p_qs_ = p_qs;
  p_qd_ = p_qd;
  t_prev_ = t;
  h_d_last_ = h_d_now;
  t_last_ = t;

  if (index_ % stride_ == 0) store_row(t);
  ++index_;
}

void LedgerAccumulator::store_row(double t) {
  ledger_.times.push_back(t);
  ledger_.w_q.push_back(w_q_);
  ledger_.q_s.push_back(q_s_);
  ledger_.q_d.push_back(q_d_);
  ledger_.q_tot.push_back(q_s_ + q_d_);
  ledger_.h_d_expect.push_back(h_d_last_);
  ledger_.residual.push_back(std::abs(-(h_d_last_ - h_d_first_) - (w_q_ + q_d_)));
}

EnergyLedger LedgerAccumulator::finish() {
  if (!have_sample_) throw ValidationError("LedgerAccumulator: no samples added");
  return std::move(ledger_);
}

EnergyLedger accumulate_ledger(const Trajectory& traj, const CompositeHamiltonian& ch,
                               const HilbertLayout& layout, const LindbladSet& ls,
                               std::size_t stride) {
  if (traj.times.size() != traj.states.size() || traj.times.empty()) {
    throw ValidationError("accumulate_ledger: malformed trajectory");
  }
  LedgerAccumulator acc(ch, layout, ls, stride);
  for (std::size_t i = 0; i < traj.times.size(); ++i) acc.add(traj.times[i], traj.states[i]);
  return acc.finish();
}

EnergyLedger accumulate_ledger(const Trajectory& traj, const CompositeHamiltonian& ch,
                               const HilbertLayout& layout, std::size_t stride) {
  if (traj.times.size() != traj.states.size() || traj.times.empty()) {
    throw ValidationError("accumulate_ledger: malformed trajectory");
  }
  LedgerAccumulator acc(ch, layout, stride);
  for (std::size_t i = 0; i < traj.times.size(); ++i) acc.add(traj.times[i], traj.states[i]);
  return acc.finish();
}

EnergyLedger unitary_energy_ledger(const CompositeHamiltonian& ch,
                                   const HilbertLayout& layout, const ComplexMatrix& rho0,
                                   double step, std::size_t n_steps, std::size_t stride) {
  if (layout.has_environment()) {
    throw ValidationError("unitary_energy_ledger: bipartite S-D layouts only");
  }
  if (!(step > 0.0)) throw ValidationError("unitary_energy_ledger: step must be positive");
  if (!is_density_matrix(rho0)) {
    throw ValidationError("unitary_energy_ledger: rho0 is not a density matrix");
  }
  validate_composite(ch, layout);
  const Eigen::Index dim = layout.total_dim();
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  const ComplexMatrix h_sd_l =
      ch.h_sd.empty() ? ComplexMatrix::Zero(dim, dim) : ch.h_sd.assemble(layout);
  const ComplexMatrix h_total = assemble_total(ch, layout);

  SpectralPropagator prop(h_total, rho0);
  const std::size_t iw = prop.add_kernel(kMinusI * commutator(h_sd_l, h_d_l));
  const std::size_t ih = prop.add_kernel(h_d_l);

  const std::size_t effective_stride = stride == 0 ? 1 : stride;
  EnergyLedger ledger;
  double w_q = 0.0;
  double p_prev = 0.0;
  double h_d_first = 0.0;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    const double t = double(i) * step;
    const std::vector<Complex> vals = prop.expectations(t);
    if (std::abs(vals[iw].imag()) > 1e-10 || std::abs(vals[ih].imag()) > 1e-10) {
      throw IntegrationError("unitary_energy_ledger: imaginary residue beyond 1e-10");
    }
    const double p_wq = vals[iw].real();
    const double h_d = vals[ih].real();
    if (i == 0) {
      h_d_first = h_d;
    } else {
      w_q += 0.5 * step * (p_prev + p_wq);
    }
    p_prev = p_wq;
    if (i % effective_stride == 0) {
      ledger.times.push_back(t);
      ledger.w_q.push_back(w_q);
      ledger.q_s.push_back(0.0);
      ledger.q_d.push_back(0.0);
      ledger.q_tot.push_back(0.0);
      ledger.h_d_expect.push_back(h_d);
      ledger.residual.push_back(std::abs(-(h_d - h_d_first) - w_q));
    }
  }
  return ledger;
}

void write_ledger_csv(const EnergyLedger& ledger, std::ostream& out) {
  out << "# units: energies in hbar*omega, times in 1/omega\n";
  out << "t,W_Q,Q_S,Q_D,Q_tot,dH_D,residual\n";
  const double h_d0 = ledger.h_d_expect.empty() ? 0.0 : ledger.h_d_expect.front();
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    out << fmt_double(ledger.times[i]) << ',' << fmt_double(ledger.w_q[i]) << ','
        << fmt_double(ledger.q_s[i]) << ',' << fmt_double(ledger.q_d[i]) << ','
        << fmt_double(ledger.q_tot[i]) << ','
        << fmt_double(ledger.h_d_expect[i] - h_d0) << ','
        << fmt_double(ledger.residual[i]) << '\n';
  }
}

}  // namespace qdrive
