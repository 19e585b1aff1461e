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

#include <Eigen/Dense>

#include "qdrive/errors.hpp"

// Dense complex-matrix kernel shared by every module: tensor products,
// partial traces, commutators, Hermitian eigendecomposition and the matrix
// functions built on it. Units: hbar = 1, energies in units of the resonance
// quantum, times in its inverse.

namespace qdrive {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;

/// Result of a Hermitian eigenproblem: ascending eigenvalues and a unitary
/// matrix whose columns are the matching eigenvectors.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Throws ValidationError (with the offending entry magnitude) if m is not
/// square Hermitian within tol.
void require_hermitian(const ComplexMatrix& m, const char* name,
                       double tol = kHermitianTol);

/// Kronecker product with the LEFT factor as the slower-varying index:
/// out(i1*db+i2, j1*db+j2) = a(i1,j1) * b(i2,j2).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace over the factors of an ordered tensor-product structure.
/// `dims` lists the factor dimensions (product must equal m rows), `keep[i]`
/// marks factors retained in the result, in their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<bool>& keep);

/// ab - ba. Anti-Hermitian when both arguments are Hermitian.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigendecomposition of a Hermitian matrix. Degenerate eigenvalues are
/// allowed; eigenvectors come back orthonormal.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// exp(-i h t) for Hermitian h, via eigendecomposition. Unitary.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t);

/// exp(-beta h) for Hermitian h (unnormalized Gibbs weight). Positive definite.
ComplexMatrix gibbs_exp(const ComplexMatrix& h, double beta);

/// Tr(rho * op) with the imaginary residue checked against `imag_tol`.
double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& op,
                        double imag_tol = 1e-10);

// Small operator factory, used throughout the models and tests.
ComplexMatrix identity(Eigen::Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix pauli_plus();   // |e><g| in the (g, e) basis
ComplexMatrix pauli_minus();  // |g><e|
ComplexMatrix annihilation(Eigen::Index n_trunc);
ComplexMatrix number_operator(Eigen::Index n_trunc);

}  // namespace qdrive
