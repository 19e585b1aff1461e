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

#include "qdrive/classical_limit.hpp"

#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

// Tr{rho B} for Hermitian B with the residue budget of the drive averages.
double drive_average(const ComplexMatrix& rho_d, const ComplexMatrix& b) {
  return real_expectation(rho_d, b, 1e-12);
}

}  // namespace

ClassicalDriveSpec::ClassicalDriveSpec(ComplexMatrix h_d, ComplexMatrix rho_d0,
                                       FactorizedCoupling couplings,
                                       std::optional<FactorizedCoupling> de_couplings)
    : h_d_(std::move(h_d)),
      rho_d0_(std::move(rho_d0)),
      couplings_(std::move(couplings)),
      de_couplings_(std::move(de_couplings)) {
  require_hermitian(h_d_, "ClassicalDriveSpec.h_d");
  if (!is_density_matrix(rho_d0_)) {
    throw ValidationError("ClassicalDriveSpec: rho_d0 is not a density matrix");
  }
  if (rho_d0_.rows() != h_d_.rows()) {
    throw ValidationError("ClassicalDriveSpec: drive state/Hamiltonian dim mismatch");
  }
  for (const CouplingTerm& term : couplings_.terms()) {
    if (term.left.rows() != h_d_.rows()) {
      throw ValidationError("ClassicalDriveSpec: coupling drive factor dim mismatch");
    }
  }
  if (de_couplings_) {
    for (const CouplingTerm& term : de_couplings_->terms()) {
      if (term.left.rows() != h_d_.rows()) {
        throw ValidationError("ClassicalDriveSpec: DE coupling drive factor dim mismatch");
      }
    }
  }
  h_d_eig_ = hermitian_eig(h_d_);
}

ComplexMatrix ClassicalDriveSpec::drive_state(double t) const {
  const ComplexVector phases =
      (Complex(0.0, -t) * h_d_eig_.values.cast<Complex>().array()).exp();
  const ComplexMatrix rho_eig = h_d_eig_.vectors.adjoint() * rho_d0_ * h_d_eig_.vectors;
  const ComplexMatrix rotated =
      phases.asDiagonal() * rho_eig * phases.conjugate().asDiagonal();
  return h_d_eig_.vectors * rotated * h_d_eig_.vectors.adjoint();
}

std::vector<double> drive_expectations(const ClassicalDriveSpec& spec, double t) {
  const ComplexMatrix rho_t = spec.drive_state(t);
  std::vector<double> out;
  out.reserve(spec.couplings().terms().size());
  for (const CouplingTerm& term : spec.couplings().terms()) {
    out.push_back(drive_average(rho_t, term.left));
  }
  return out;
}

std::vector<double> drive_expectation_rates(const ClassicalDriveSpec& spec, double t) {
  const ComplexMatrix rho_t = spec.drive_state(t);
  std::vector<double> out;
  out.reserve(spec.couplings().terms().size());
  for (const CouplingTerm& term : spec.couplings().terms()) {
    // d<B>/dt = -i Tr{rho_D(t) [B, H_D]}; exact, no finite differences.
    const ComplexMatrix kernel =
        Complex(0.0, -1.0) * commutator(term.left, spec.h_d());
    out.push_back(real_expectation(rho_t, kernel, 1e-10));
  }
  return out;
}

ComplexMatrix build_classical_hamiltonian(const ComplexMatrix& h_s,
                                          const ClassicalDriveSpec& spec, double t) {
  require_hermitian(h_s, "build_classical_hamiltonian.h_s");
  ComplexMatrix h_cl = h_s;
  const ComplexMatrix rho_t = spec.drive_state(t);
  for (const CouplingTerm& term : spec.couplings().terms()) {
    if (term.right.rows() != h_s.rows()) {
      throw ValidationError("build_classical_hamiltonian: system factor dim mismatch");
    }
    h_cl += drive_average(rho_t, term.left) * term.right;
  }
  if (spec.de_couplings()) {
    // Effective drive-environment term sum_a D_a <C_a>_D(t); the caller's
    // "system" space is then the environment factor.
    for (const CouplingTerm& term : spec.de_couplings()->terms()) {
      if (term.right.rows() != h_s.rows()) {
        throw ValidationError("build_classical_hamiltonian: DE factor dim mismatch");
      }
      h_cl += drive_average(rho_t, term.left) * term.right;
    }
  }
  return h_cl;
}

double classical_power(const ComplexMatrix& rho_s, const ClassicalDriveSpec& spec,
                       const ComplexMatrix& h_s, double t, const ComplexMatrix* diss) {
  if (!is_density_matrix(rho_s)) {
    throw ValidationError("classical_power: rho_s is not a density matrix");
  }
  if (rho_s.rows() != h_s.rows()) {
    throw ValidationError("classical_power: system dim mismatch");
  }
  const std::vector<double> rates = drive_expectation_rates(spec, t);
  const std::vector<CouplingTerm>& terms = spec.couplings().terms();
  double power = 0.0;
  for (std::size_t a = 0; a < terms.size(); ++a) {
    if (terms[a].right.rows() != h_s.rows()) {
      throw ValidationError("classical_power: system factor dim mismatch");
    }
    power += rates[a] * real_expectation(rho_s, terms[a].right);
  }
  if (diss != nullptr) {
    if (diss->rows() != h_s.rows()) {
      throw ValidationError("classical_power: dissipator dim mismatch");
    }
    const ComplexMatrix h_cl = build_classical_hamiltonian(h_s, spec, t);
    power -= real_expectation(*diss, h_cl);
  }
  return power;
}

}  // namespace qdrive
