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

#include "qdrive/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "qdrive/composite_model.hpp"

namespace qdrive {

namespace {

constexpr double kTraceAbortTol = 1e-6;
constexpr double kEigenAbortTol = 1e-6;
// Positivity is sampled on this time interval rather than every step; the
// trace is monitored every step.
constexpr double kEigenCheckInterval = 0.1;

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("evolution grid must be non-empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) {
      throw ValidationError("evolution grid must be strictly ascending");
    }
  }
}

void require_density(const ComplexMatrix& rho0, const char* where) {
  if (!is_density_matrix(rho0)) {
    std::ostringstream msg;
    msg << where << ": initial state is not a density matrix";
    throw ValidationError(msg.str());
  }
}

void check_state_health(const ComplexMatrix& rho, double t, bool check_eigs) {
  const double trace_drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
  if (trace_drift > kTraceAbortTol) {
    std::ostringstream msg;
    msg << "integration failure at t = " << t << ": trace drift " << trace_drift
        << " exceeds " << kTraceAbortTol << "; use a smaller step";
    throw IntegrationError(msg.str());
  }
  if (check_eigs) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ComplexMatrix(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -kEigenAbortTol) {
      std::ostringstream msg;
      msg << "integration failure at t = " << t << ": minimum eigenvalue " << min_eig
          << " below -" << kEigenAbortTol << "; use a smaller step";
      throw IntegrationError(msg.str());
    }
  }
}

// Shared RK4 driver over a grid. `rhs(t, rho, out)` fills the derivative.
template <typename Rhs>
Trajectory integrate_rk4(const ComplexMatrix& rho0, const std::vector<double>& grid,
                         double step, const StepObserver& observer, Rhs&& rhs) {
  require_grid(grid);
  if (!(step > 0.0)) throw ValidationError("integration step must be positive");

  const Eigen::Index dim = rho0.rows();
  ComplexMatrix rho = rho0;
  ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);

  Trajectory traj;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());

  double t = grid.front();
  if (observer) observer(t, rho);
  traj.times.push_back(t);
  traj.states.push_back(rho);
  double next_eig_check = t + kEigenCheckInterval;

  for (std::size_t seg = 1; seg < grid.size(); ++seg) {
    const double span = grid[seg] - grid[seg - 1];
    const auto n_sub = static_cast<std::size_t>(std::llround(span / step));
    if (n_sub == 0 || std::abs(span - double(n_sub) * step) > 1e-9 * std::max(1.0, span)) {
      std::ostringstream msg;
      msg << "step " << step << " does not divide the grid interval " << span;
      throw ValidationError(msg.str());
    }
    const double h = span / double(n_sub);
    for (std::size_t i = 0; i < n_sub; ++i) {
      rhs(t, rho, k1);
      tmp.noalias() = rho + (0.5 * h) * k1;
      rhs(t + 0.5 * h, tmp, k2);
      tmp.noalias() = rho + (0.5 * h) * k2;
      rhs(t + 0.5 * h, tmp, k3);
      tmp.noalias() = rho + h * k3;
      rhs(t + h, tmp, k4);
      rho.noalias() += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = grid[seg - 1] + double(i + 1) * h;
      const bool at_sample = (i + 1 == n_sub);
      const bool eig_due = t >= next_eig_check;
      if (eig_due) next_eig_check = t + kEigenCheckInterval;
      check_state_health(rho, t, at_sample || eig_due);
      if (observer) observer(t, rho);
    }
    traj.times.push_back(grid[seg]);
    traj.states.push_back(rho);
  }
  return traj;
}

}  // namespace

LindbladSet::LindbladSet(std::vector<ComplexMatrix> jumps) : jumps_(std::move(jumps)) {
  if (jumps_.empty()) return;
  const Eigen::Index dim = jumps_.front().rows();
  sum_ldag_l_ = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& l : jumps_) {
    if (l.rows() != dim || l.cols() != dim) {
      throw ValidationError("LindbladSet: jump operators must share one square dim");
    }
    if (!l.allFinite()) throw ValidationError("LindbladSet: jump operator not finite");
    sum_ldag_l_.noalias() += l.adjoint() * l;
  }
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
  return unitary_exp(h, t);
}

Trajectory evolve_unitary(const ComplexMatrix& rho0, const ComplexMatrix& h,
                          const std::vector<double>& grid) {
  require_grid(grid);
  require_density(rho0, "evolve_unitary");
  if (h.rows() != rho0.rows()) throw ValidationError("evolve_unitary: dimension mismatch");
  const EigenSystem eig = hermitian_eig(h);
  const ComplexMatrix rho_eig = eig.vectors.adjoint() * rho0 * eig.vectors;

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  for (double t : grid) {
    const ComplexVector phases =
        (Complex(0.0, -t) * eig.values.cast<Complex>().array()).exp();
    const ComplexMatrix rotated =
        phases.asDiagonal() * rho_eig * phases.conjugate().asDiagonal();
    traj.states.push_back(eig.vectors * rotated * eig.vectors.adjoint());
  }
  return traj;
}

ComplexMatrix apply_dissipator(const ComplexMatrix& rho, const LindbladSet& ls) {
  if (ls.empty()) return ComplexMatrix::Zero(rho.rows(), rho.cols());
  if (ls.dim() != rho.rows() || rho.rows() != rho.cols()) {
    throw ValidationError("apply_dissipator: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const ComplexMatrix& l : ls.jumps()) {
    out.noalias() += 2.0 * (l * rho * l.adjoint());
  }
  const ComplexMatrix& k = ls.anticommutator_part();
  out.noalias() -= k * rho;
  out.noalias() -= rho * k;
  return out;
}

ComplexMatrix adjoint_dissipator(const LindbladSet& ls, const ComplexMatrix& x) {
  if (ls.empty()) return ComplexMatrix::Zero(x.rows(), x.cols());
  if (ls.dim() != x.rows() || x.rows() != x.cols()) {
    throw ValidationError("adjoint_dissipator: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const ComplexMatrix& l : ls.jumps()) {
    out.noalias() += 2.0 * (l.adjoint() * x * l);
  }
  const ComplexMatrix& k = ls.anticommutator_part();
  out.noalias() -= k * x;
  out.noalias() -= x * k;
  return out;
}

Trajectory evolve_lindblad(const ComplexMatrix& rho0, const ComplexMatrix& h,
                           const LindbladSet& ls, const std::vector<double>& grid,
                           double step, const StepObserver& observer) {
  require_density(rho0, "evolve_lindblad");
  if (h.rows() != rho0.rows()) throw ValidationError("evolve_lindblad: dimension mismatch");
  if (!ls.empty() && ls.dim() != rho0.rows()) {
    throw ValidationError("evolve_lindblad: jump operator dimension mismatch");
  }
  const Complex mi(0.0, -1.0);
  const ComplexMatrix& k = ls.anticommutator_part();
  const Eigen::Index dim = rho0.rows();
  ComplexMatrix sandwich(dim, dim);
  auto rhs = [&](double, const ComplexMatrix& rho, ComplexMatrix& out) {
    out.noalias() = mi * (h * rho);
    out.noalias() += Complex(0.0, 1.0) * (rho * h);
    if (!ls.empty()) {
      for (const ComplexMatrix& l : ls.jumps()) {
        sandwich.noalias() = l * rho;
        out.noalias() += 2.0 * (sandwich * l.adjoint());
      }
      out.noalias() -= k * rho;
      out.noalias() -= rho * k;
    }
  };
  return integrate_rk4(rho0, grid, step, observer, rhs);
}

Trajectory evolve_time_dependent(const ComplexMatrix& rho0,
                                 const HamiltonianProvider& h_of_t,
                                 const std::vector<double>& grid, double step,
                                 const StepObserver& observer) {
  require_density(rho0, "evolve_time_dependent");
  if (!h_of_t) throw ValidationError("evolve_time_dependent: provider is empty");
  const Complex mi(0.0, -1.0);
  auto rhs = [&](double t, const ComplexMatrix& rho, ComplexMatrix& out) {
    const ComplexMatrix h = h_of_t(t);
    if (h.rows() != rho.rows()) {
      throw ValidationError("evolve_time_dependent: provider dim changed");
    }
    out.noalias() = mi * (h * rho);
    out.noalias() += Complex(0.0, 1.0) * (rho * h);
  };
  return integrate_rk4(rho0, grid, step, observer, rhs);
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix& h, const ComplexMatrix& rho0)
    : eig_(hermitian_eig(h)) {
  if (rho0.rows() != h.rows() || rho0.cols() != h.cols()) {
    throw ValidationError("SpectralPropagator: state/Hamiltonian dim mismatch");
  }
  rho_eig_ = eig_.vectors.adjoint() * rho0 * eig_.vectors;
  phase_.resize(h.rows());
  work_.resize(h.rows());
}

std::size_t SpectralPropagator::add_kernel(const ComplexMatrix& k) {
  if (k.rows() != rho_eig_.rows() || k.cols() != rho_eig_.cols()) {
    throw ValidationError("SpectralPropagator: kernel dim mismatch");
  }
  const ComplexMatrix k_eig = eig_.vectors.adjoint() * k * eig_.vectors;
  // G(p,q) = rho_eig(p,q) * k_eig(q,p); Tr{rho(t) K} = u^T (G conj(u)).
  coeff_.push_back(rho_eig_.cwiseProduct(k_eig.transpose()));
  return coeff_.size() - 1;
}

std::vector<Complex> SpectralPropagator::expectations(double t) const {
  phase_ = (Complex(0.0, -t) * eig_.values.cast<Complex>().array()).exp();
  std::vector<Complex> out;
  out.reserve(coeff_.size());
  for (const ComplexMatrix& g : coeff_) {
    work_.noalias() = g * phase_.conjugate();
    out.push_back(phase_.transpose() * work_);
  }
  return out;
}

ComplexMatrix SpectralPropagator::state(double t) const {
  phase_ = (Complex(0.0, -t) * eig_.values.cast<Complex>().array()).exp();
  const ComplexMatrix rotated =
      phase_.asDiagonal() * rho_eig_ * phase_.conjugate().asDiagonal();
  return eig_.vectors * rotated * eig_.vectors.adjoint();
}

}  // namespace qdrive
