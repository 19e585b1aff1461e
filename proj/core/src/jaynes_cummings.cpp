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

#include "qdrive/jaynes_cummings.hpp"

#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

constexpr double kCoherentNormTol = 1e-8;
constexpr double kRateThreshold = 1e-14;

// Poisson weight |alpha|^{2n} e^{-|alpha|^2} / n! in log space.
double poisson_weight(double nbar, int n) {
  if (nbar <= 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-nbar + double(n) * std::log(nbar) - std::lgamma(double(n) + 1.0));
}

}  // namespace

void validate_jc(const JCParams& params) {
  if (!(params.omega > 0.0)) throw ValidationError("JCParams: omega must be positive");
  if (params.g < 0.0) throw ValidationError("JCParams: g must be >= 0");
  if (params.n_trunc < 2) throw ValidationError("JCParams: n_trunc must be >= 2");
}

double DriveState::mean_photon_number() const {
  double sum = 0.0;
  for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
    sum += double(n) * std::norm(amplitudes(n));
  }
  return sum;
}

ComplexMatrix DriveState::density() const {
  return amplitudes * amplitudes.adjoint();
}

int suggested_n_trunc(double nbar) {
  return int(std::ceil(nbar + 10.0 * std::sqrt(std::max(nbar, 0.0)) + 10.0));
}

DriveState coherent_state(Complex alpha, int n_trunc) {
  if (n_trunc < 1) throw ValidationError("coherent_state: n_trunc must be >= 1");
  const double mod = std::abs(alpha);
  const double phase = std::arg(alpha);
  ComplexVector a(n_trunc);
  for (int n = 0; n < n_trunc; ++n) {
    if (mod == 0.0) {
      a(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mod =
        -0.5 * mod * mod + double(n) * std::log(mod) - 0.5 * std::lgamma(double(n) + 1.0);
    a(n) = std::polar(std::exp(log_mod), phase * double(n));
  }
  const double deficit = 1.0 - a.squaredNorm();
  if (deficit > kCoherentNormTol) {
    const int required = suggested_n_trunc(mod * mod);
    std::ostringstream msg;
    msg << "coherent_state: truncation at " << n_trunc << " keeps only "
        << (1.0 - deficit) << " of the norm; use n_trunc >= " << required;
    throw TruncationError(msg.str(), required);
  }
  return DriveState{std::move(a)};
}

DriveState fock_state(int n, int n_trunc) {
  if (n < 0 || n >= n_trunc) {
    throw ValidationError("fock_state: photon number outside the truncated space");
  }
  ComplexVector a = ComplexVector::Zero(n_trunc);
  a(n) = 1.0;
  return DriveState{std::move(a)};
}

HilbertLayout jc_layout(const JCParams& params) {
  validate_jc(params);
  return HilbertLayout::bipartite(params.n_trunc, 2);
}

CompositeHamiltonian build_jc(const JCParams& params) {
  validate_jc(params);
  const int nt = params.n_trunc;
  const ComplexMatrix b = annihilation(nt);
  const ComplexMatrix bdag = b.adjoint();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  CompositeHamiltonian ch;
  ch.h_s = 0.5 * params.omega * pauli_z();
  ch.h_d = params.omega * (bdag * b);
  // g (b (x) s+ + b^+ (x) s-) as two Hermitian quadrature pairs.
  const ComplexMatrix b1 = inv_sqrt2 * (b + bdag);
  const ComplexMatrix b2 = Complex(0.0, 1.0) * inv_sqrt2 * (b - bdag);
  const ComplexMatrix a1 = (params.g * inv_sqrt2) * pauli_x();
  const ComplexMatrix a2 = (params.g * inv_sqrt2) * pauli_y();
  ch.h_sd = FactorizedCoupling(Slot::Drive, Slot::System,
                               {CouplingTerm{b1, a1}, CouplingTerm{b2, a2}});
  return ch;
}

double rabi_frequency(const JCParams& params, int n) {
  if (n < -1) throw ValidationError("rabi_frequency: sector must be >= -1");
  return n < 0 ? 0.0 : params.g * std::sqrt(double(n) + 1.0);
}

double fock_quantum_work(const JCParams& params, int n, double t) {
  validate_jc(params);
  const double s = std::sin(rabi_frequency(params, n) * t);
  return -params.omega * s * s;
}

double coherent_classical_work(const JCParams& params, Complex alpha, double t) {
  validate_jc(params);
  const double s = std::sin(params.g * std::abs(alpha) * t);
  return -params.omega * s * s;
}

double coherent_quantum_work(const JCParams& params, Complex alpha, double t) {
  validate_jc(params);
  const double nbar = std::norm(alpha);
  double sum = 0.0;
  for (int n = 0; n < params.n_trunc; ++n) {
    const double s = std::sin(rabi_frequency(params, n) * t);
    sum += poisson_weight(nbar, n) * s * s;
  }
  return -params.omega * sum;
}

Complex jc_drive_amplitude(const DriveState& state, const JCParams& params) {
  validate_jc(params);
  Complex s = 0.0;
  for (Eigen::Index n = 0; n + 1 < state.amplitudes.size(); ++n) {
    s += std::conj(state.amplitudes(n)) * state.amplitudes(n + 1) *
         std::sqrt(double(n) + 1.0);
  }
  return params.g * s;
}

ComplexMatrix jc_classical_hamiltonian(const DriveState& state, const JCParams& params,
                                       double t) {
  const Complex s = jc_drive_amplitude(state, params);
  const Complex rotating = std::polar(1.0, -params.omega * t) * s;
  ComplexMatrix h = 0.5 * params.omega * pauli_z();
  h += rotating * pauli_plus();
  h += std::conj(rotating) * pauli_minus();
  return h;
}

ClassicalDriveSpec jc_classical_spec(const DriveState& state, const JCParams& params) {
  const CompositeHamiltonian ch = build_jc(params);
  if (state.amplitudes.size() != params.n_trunc) {
    throw ValidationError("jc_classical_spec: drive state does not match n_trunc");
  }
  return ClassicalDriveSpec(ch.h_d, state.density(), ch.h_sd);
}

LindbladSet golden_rule_dissipator(const JCParams& params, double theta) {
  validate_jc(params);
  if (theta < 0.0) throw ValidationError("golden_rule_dissipator: theta must be >= 0");
  if (theta == 0.0) return LindbladSet{};

  const HilbertLayout layout = jc_layout(params);
  const ComplexMatrix h = assemble_total(build_jc(params), layout);
  const EigenSystem eig = hermitian_eig(h);
  const ComplexMatrix sx = lift(pauli_x(), layout, Slot::System);

  std::vector<ComplexMatrix> jumps;
  const Eigen::Index dim = eig.values.size();
  for (Eigen::Index target = 0; target < dim; ++target) {
    for (Eigen::Index source = 0; source < dim; ++source) {
      if (eig.values(source) <= eig.values(target) + 1e-12) continue;
      const Complex element =
          eig.vectors.col(target).adjoint() * sx * eig.vectors.col(source);
      const double rate = theta * std::norm(element);
      if (rate <= kRateThreshold) continue;
      jumps.push_back(std::sqrt(rate) * eig.vectors.col(target) *
                      eig.vectors.col(source).adjoint());
    }
  }
  return LindbladSet(std::move(jumps));
}

EnergyLedger damped_excitation_experiment(const JCParams& params, double theta,
                                          double t_max, double step, std::size_t stride,
                                          double stationary_tol) {
  validate_jc(params);
  if (!(t_max > 0.0)) throw ValidationError("damped_excitation_experiment: t_max <= 0");
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix h = assemble_total(ch, layout);
  const LindbladSet ls = golden_rule_dissipator(params, theta);

  ComplexMatrix rho_s = ComplexMatrix::Zero(2, 2);
  rho_s(1, 1) = 1.0;  // excited two-level state
  const ComplexMatrix rho0 =
      product_state({fock_state(0, params.n_trunc).density(), rho_s}, layout);

  LedgerAccumulator acc(ch, layout, ls, stride);
  const StepObserver observer = [&acc](double t, const ComplexMatrix& rho) {
    acc.add(t, rho);
  };
  evolve_lindblad(rho0, h, ls, {0.0, t_max}, step, observer);

  const double residual_power = std::max(
      {std::abs(acc.last_wq_power()), std::abs(acc.last_qs_power()),
       std::abs(acc.last_qd_power())});
  if (residual_power >= stationary_tol) {
    std::ostringstream msg;
    msg << "damped_excitation_experiment: not stationary by t_max = " << t_max
        << " (largest power " << residual_power << " >= " << stationary_tol << ")";
    throw IntegrationError(msg.str());
  }
  return acc.finish();
}

QuantumClassicalComparison compare_quantum_classical(const JCParams& params, Complex alpha,
                                                     const std::vector<double>& grid) {
  validate_jc(params);
  if (grid.size() < 2) throw ValidationError("compare_quantum_classical: grid too short");
  const double spacing = grid[1] - grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - spacing) > 1e-9) {
      throw ValidationError("compare_quantum_classical: grid must be uniform");
    }
  }

  QuantumClassicalComparison out;
  out.times = grid;
  out.t_q = std::abs(alpha) / params.g;
  out.w_q.reserve(grid.size());
  for (double t : grid) out.w_q.push_back(coherent_quantum_work(params, alpha, t));

  // Classical side: evolve the excited two-level state under the rotating
  // closed-form Hamiltonian and integrate Tr{rho d_t H_CL}.
  const DriveState state = coherent_state(alpha, params.n_trunc);
  const Complex s = jc_drive_amplitude(state, params);
  const HamiltonianProvider provider = [&state, &params](double t) {
    return jc_classical_hamiltonian(state, params, t);
  };
  auto dt_kernel = [&](double t) {
    const Complex c = Complex(0.0, -params.omega) * std::polar(1.0, -params.omega * t) * s;
    ComplexMatrix k = c * pauli_plus();
    k += std::conj(c) * pauli_minus();
    return k;
  };

  ComplexMatrix rho_e = ComplexMatrix::Zero(2, 2);
  rho_e(1, 1) = 1.0;
  out.w_cl.reserve(grid.size());
  double w_cl = 0.0;
  double p_prev = 0.0;
  bool first = true;
  const StepObserver observer = [&](double t, const ComplexMatrix& rho) {
    const double p = real_expectation(rho, dt_kernel(t));
    if (first) {
      first = false;
    } else {
      w_cl += 0.5 * spacing * (p_prev + p);
    }
    p_prev = p;
    out.w_cl.push_back(w_cl);
  };
  evolve_time_dependent(rho_e, provider, grid, spacing, observer);
  return out;
}

}  // namespace qdrive
