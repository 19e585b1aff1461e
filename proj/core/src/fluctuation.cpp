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

#include "qdrive/fluctuation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qdrive {

namespace {

constexpr double kDeviationFloor = 1e-13;

void require_beta_match(double stored, double requested) {
  if (std::abs(stored - requested) > 1e-12 * std::max(1.0, std::abs(requested))) {
    std::ostringstream msg;
    msg << "beta mismatch: result built at beta = " << stored << ", requested "
        << requested;
    throw ValidationError(msg.str());
  }
}

double large_nbar_deviation_for_state(const DriveState& state, double nbar) {
  if (nbar < 1.0) {
    throw ValidationError("large_nbar_deviation: mean photon number must be >= 1");
  }
  const double pi = std::numbers::pi;
  double sum = 0.0;
  for (Eigen::Index n = 0; n < state.amplitudes.size(); ++n) {
    sum += std::norm(state.amplitudes(n)) *
           std::sin(pi * std::sqrt(double(n)) / std::sqrt(nbar));
  }
  return -(pi / (4.0 * nbar)) * sum;
}

}  // namespace

TmaResult tma_probabilities(const ComplexMatrix& u_T, const ComplexMatrix& rho_d0,
                            const ComplexMatrix& h_s, double beta,
                            const HilbertLayout& layout) {
  if (layout.has_environment()) {
    throw ValidationError(
        "tma_probabilities: the composite is decoupled from the environment during "
        "the protocol; use a bipartite layout");
  }
  const Eigen::Index dim = layout.total_dim();
  const Eigen::Index d_s = layout.dim(Slot::System);
  if (u_T.rows() != dim || u_T.cols() != dim) {
    throw ValidationError("tma_probabilities: propagator dim does not match layout");
  }
  if ((u_T.adjoint() * u_T - identity(dim)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("tma_probabilities: propagator is not unitary");
  }
  if (rho_d0.rows() != layout.dim(Slot::Drive)) {
    throw ValidationError("tma_probabilities: drive state dim does not match layout");
  }
  if (!is_density_matrix(rho_d0)) {
    throw ValidationError("tma_probabilities: rho_d0 is not a density matrix");
  }
  if (h_s.rows() != d_s) {
    throw ValidationError("tma_probabilities: system Hamiltonian dim mismatch");
  }

  const EigenSystem sys = hermitian_eig(h_s);
  const double scale = std::max(1.0, sys.values.cwiseAbs().maxCoeff());
  for (Eigen::Index n = 1; n < d_s; ++n) {
    if (sys.values(n) - sys.values(n - 1) < 1e-10 * scale) {
      throw ModelError(
          "tma_probabilities: degenerate system spectrum is not supported by the "
          "two-measurement protocol");
    }
  }

  TmaResult res;
  res.eigenvalues = sys.values;
  res.beta = beta;
  RealVector weights = (-beta * sys.values.array()).exp();
  res.initial_probs = weights / weights.sum();

  res.conditional_probs.resize(d_s, d_s);
  for (Eigen::Index n = 0; n < d_s; ++n) {
    const ComplexMatrix projector =
        sys.vectors.col(n) * sys.vectors.col(n).adjoint();
    const ComplexMatrix rho0 = kron(rho_d0, projector);
    const ComplexMatrix rho_T = u_T * rho0 * u_T.adjoint();
    const ComplexMatrix rho_s = partial_trace(rho_T, layout, {Slot::System});
    for (Eigen::Index k = 0; k < d_s; ++k) {
      const Complex p = sys.vectors.col(k).adjoint() * rho_s * sys.vectors.col(k);
      res.conditional_probs(k, n) = p.real();
    }
    const double column_sum = res.conditional_probs.col(n).sum();
    if (std::abs(column_sum - 1.0) > 1e-8) {
      std::ostringstream msg;
      msg << "tma_probabilities: column " << n << " sums to " << column_sum;
      throw IntegrationError(msg.str());
    }
  }
  res.joint_probs = res.conditional_probs * res.initial_probs.asDiagonal();
  return res;
}

double bk_average(const TmaResult& res, double beta) {
  require_beta_match(res.beta, beta);
  double sum = 0.0;
  for (Eigen::Index n = 0; n < res.eigenvalues.size(); ++n) {
    for (Eigen::Index k = 0; k < res.eigenvalues.size(); ++k) {
      sum += res.joint_probs(k, n) * std::exp(-beta * res.work_value(k, n));
    }
  }
  return sum;
}

double bk_average_rearranged(const TmaResult& res, double beta) {
  require_beta_match(res.beta, beta);
  const RealVector weights = (-beta * res.eigenvalues.array()).exp();
  const double z_s = weights.sum();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < res.eigenvalues.size(); ++k) {
    sum += weights(k) / z_s * res.conditional_probs.row(k).sum();
  }
  return sum;
}

double jc_conditional_asymmetry(const DriveState& state, const JCParams& params,
                                double T) {
  validate_jc(params);
  double asym = 0.0;
  for (Eigen::Index n = 0; n < state.amplitudes.size(); ++n) {
    const double up = std::cos(rabi_frequency(params, int(n)) * T);
    const double down = std::cos(rabi_frequency(params, int(n) - 1) * T);
    asym += std::norm(state.amplitudes(n)) * (up * up - down * down);
  }
  return asym;
}

double jc_bk_closed_form(const DriveState& state, const JCParams& params, double T,
                         double beta) {
  const double half = 0.5 * params.omega;
  const double z_s = std::exp(beta * half) + std::exp(-beta * half);
  const double prefactor = (std::exp(-beta * half) - std::exp(beta * half)) / z_s;
  return 1.0 + prefactor * jc_conditional_asymmetry(state, params, T);
}

double large_nbar_deviation(Complex alpha, const JCParams& params) {
  validate_jc(params);
  const double nbar = std::norm(alpha);
  const DriveState state = coherent_state(alpha, params.n_trunc);
  return large_nbar_deviation_for_state(state, nbar);
}

BkSweepResult bk_scaling_sweep(const std::vector<double>& nbar_list,
                               const JCParams& params, double beta, DrivingKind kind) {
  validate_jc(params);
  if (nbar_list.size() < 3) {
    throw ValidationError("bk_scaling_sweep: need at least 3 nbar points");
  }
  double lo = nbar_list.front(), hi = nbar_list.front();
  for (double nbar : nbar_list) {
    if (!(nbar > 0.0)) throw ValidationError("bk_scaling_sweep: nbar must be positive");
    lo = std::min(lo, nbar);
    hi = std::max(hi, nbar);
  }
  if (hi < 10.0 * lo) {
    throw ValidationError("bk_scaling_sweep: nbar points must span at least a decade");
  }

  BkSweepResult out;
  out.points.reserve(nbar_list.size());
  const double pi = std::numbers::pi;
  for (double nbar : nbar_list) {
    const double T = pi / (2.0 * params.g * std::sqrt(nbar));
    double bk = 1.0;
    if (kind == DrivingKind::Quantum) {
      JCParams point = params;
      point.n_trunc = std::max(params.n_trunc, suggested_n_trunc(nbar));
      const DriveState state = coherent_state(std::sqrt(nbar), point.n_trunc);
      bk = jc_bk_closed_form(state, point, T, beta);
    }
    // ClassicalFactorized driving keeps the identity exact: bk stays 1.
    const double dev = bk - 1.0;
    if (std::abs(dev) < kDeviationFloor) {
      std::ostringstream msg;
      msg << "bk_scaling_sweep: |deviation| = " << std::abs(dev) << " at nbar = " << nbar
          << " sits below the numerical floor " << kDeviationFloor
          << "; the log-log fit is undefined";
      throw NumericalFloorError(msg.str());
    }
    out.points.push_back(BkSweepPoint{nbar, T, bk, dev});
  }

  // Least-squares slope of ln|dev| against ln(nbar).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = double(out.points.size());
  for (const BkSweepPoint& p : out.points) {
    const double x = std::log(p.nbar);
    const double y = std::log(std::abs(p.deviation));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

MeanForceSummary mean_force_summary(const ComplexMatrix& u_t, const ComplexMatrix& rho_d0,
                                    const ComplexMatrix& h_s, double beta,
                                    const HilbertLayout& layout) {
  if (layout.has_environment()) {
    throw ValidationError("mean_force_summary: bipartite S-D layouts only");
  }
  if (!(beta > 0.0)) throw ValidationError("mean_force_summary: beta must be positive");
  const Eigen::Index dim = layout.total_dim();
  if (u_t.rows() != dim || u_t.cols() != dim) {
    throw ValidationError("mean_force_summary: propagator dim does not match layout");
  }
  if ((u_t.adjoint() * u_t - identity(dim)).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("mean_force_summary: propagator is not unitary");
  }
  if (!is_density_matrix(rho_d0)) {
    throw ValidationError("mean_force_summary: rho_d0 is not a density matrix");
  }
  require_hermitian(h_s, "mean_force_summary.h_s");

  const ComplexMatrix h_heis = u_t.adjoint() * lift(h_s, layout, Slot::System) * u_t;
  const ComplexMatrix gibbs_heis = gibbs_exp(h_heis, beta);
  const ComplexMatrix rho_lift = kron(rho_d0, identity(layout.dim(Slot::System)));

  // M(t) = Tr_D{ e^{-beta H^H} (rho_D (x) I_S) }; Hermitian positive definite.
  const ComplexMatrix m =
      partial_trace(ComplexMatrix(gibbs_heis * rho_lift), layout, {Slot::System});

  MeanForceSummary out;
  out.z_prime = m.trace().real();
  if (!(out.z_prime > 0.0)) {
    throw IntegrationError("mean_force_summary: non-positive drive-averaged exponential");
  }
  const EigenSystem m_eig = hermitian_eig(ComplexMatrix(0.5 * (m + m.adjoint())));
  if (m_eig.values.minCoeff() <= 0.0) {
    throw IntegrationError(
        "mean_force_summary: drive-averaged exponential is not positive definite");
  }
  const RealVector log_vals = m_eig.values.array().log();
  out.h_star = m_eig.vectors * (-log_vals / beta).cast<Complex>().asDiagonal() *
               m_eig.vectors.adjoint();

  const Complex energy_trace = (gibbs_heis * h_heis * rho_lift).trace();
  if (std::abs(energy_trace.imag()) > 1e-9 * std::max(1.0, std::abs(energy_trace.real()))) {
    throw IntegrationError("mean_force_summary: internal-energy trace not real");
  }
  out.e_prime = energy_trace.real() / out.z_prime;
  out.f_prime = -std::log(out.z_prime) / beta;
  return out;
}

}  // namespace qdrive
