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

#include <optional>
#include <vector>

#include "qdrive/composite_model.hpp"
#include "qdrive/dynamics.hpp"

// Classical-driving reduction: the drive evolves freely and enters the
// system Hamiltonian only through the expectation values <B_a>_D(t) of its
// coupling factors. This is the Born-factorized limit where backaction on
// the drive is discarded.

namespace qdrive {

/// Free drive plus the factorized couplings it enters through.
/// The drive evolution rho_D(t) = e^{-i H_D t} rho_D(0) e^{+i H_D t} is closed
/// by assumption; H_D is diagonalized once at construction.
class ClassicalDriveSpec {
 public:
  ClassicalDriveSpec(ComplexMatrix h_d, ComplexMatrix rho_d0,
                     FactorizedCoupling couplings,
                     std::optional<FactorizedCoupling> de_couplings = std::nullopt);

  const ComplexMatrix& h_d() const { return h_d_; }
  const ComplexMatrix& rho_d0() const { return rho_d0_; }
  const FactorizedCoupling& couplings() const { return couplings_; }
  const std::optional<FactorizedCoupling>& de_couplings() const { return de_couplings_; }

  /// rho_D(t) under free drive evolution.
  ComplexMatrix drive_state(double t) const;

 private:
  ComplexMatrix h_d_;
  ComplexMatrix rho_d0_;
  FactorizedCoupling couplings_;
  std::optional<FactorizedCoupling> de_couplings_;
  EigenSystem h_d_eig_;
};

/// <B_a>_D(t) for every coupling term, under free drive evolution.
/// Real for Hermitian drive factors (residue checked).
std::vector<double> drive_expectations(const ClassicalDriveSpec& spec, double t);

/// d<B_a>_D/dt evaluated analytically as -i Tr_D{rho_D(t) [B_a, H_D]}.
std::vector<double> drive_expectation_rates(const ClassicalDriveSpec& spec, double t);

/// H_CL,S(t) = H_S + sum_a A_a <B_a>_D(t), plus the drive-environment
/// effective term sum_a D_a <C_a>_D(t) when de_couplings are present.
/// H_D itself never appears.
ComplexMatrix build_classical_hamiltonian(const ComplexMatrix& h_s,
                                          const ClassicalDriveSpec& spec, double t);

/// Classically injected power at time t:
///   Tr_S{ rho_S  d_t(H_CL,S) }          (explicit drive-time dependence)
///   - Tr_S{ diss * H_CL,S }             (heat-exchange term, when a
///                                        dissipator output is supplied)
/// with d_t(H_CL,S) = sum_a (d<B_a>_D/dt) A_a computed analytically.
double classical_power(const ComplexMatrix& rho_s, const ClassicalDriveSpec& spec,
                       const ComplexMatrix& h_s, double t,
                       const ComplexMatrix* diss = nullptr);

}  // namespace qdrive
