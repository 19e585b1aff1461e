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

#include "qdrive/tensor_algebra.hpp"

#include <cmath>
#include <sstream>

namespace qdrive {

namespace {

void require_square(const ComplexMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream msg;
    msg << name << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_hermitian(const ComplexMatrix& m, const char* name, double tol) {
  require_square(m, name);
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    std::ostringstream msg;
    msg << name << ": not Hermitian, max|M - M^+| = " << dev << " exceeds " << tol;
    throw ValidationError(msg.str());
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<bool>& keep) {
  require_square(m, "partial_trace");
  if (dims.size() != keep.size()) {
    throw ValidationError("partial_trace: dims and keep size mismatch");
  }
  Eigen::Index total = 1;
  Eigen::Index kept = 1;
  Eigen::Index traced = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw ValidationError("partial_trace: factor dims must be positive");
    total *= dims[i];
    (keep[i] ? kept : traced) *= dims[i];
  }
  if (total != m.rows()) {
    std::ostringstream msg;
    msg << "partial_trace: matrix dim " << m.rows()
        << " does not match the layout product " << total;
    throw ValidationError(msg.str());
  }
  if (kept == total) return m;

  // Strides of each factor in the flattened index (row-major over slots).
  const std::size_t n = dims.size();
  std::vector<Eigen::Index> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::vector<std::size_t> kept_slots;
  std::vector<std::size_t> traced_slots;
  for (std::size_t i = 0; i < n; ++i) (keep[i] ? kept_slots : traced_slots).push_back(i);

  // Row offsets of every kept and traced multi-index combination.
  auto offsets = [&](const std::vector<std::size_t>& slots) {
    std::vector<Eigen::Index> out{0};
    for (std::size_t s : slots) {
      std::vector<Eigen::Index> next;
      next.reserve(out.size() * dims[s]);
      for (Eigen::Index base : out) {
        for (Eigen::Index k = 0; k < dims[s]; ++k) next.push_back(base + k * stride[s]);
      }
      out = std::move(next);
    }
    return out;
  };
  const std::vector<Eigen::Index> kept_off = offsets(kept_slots);
  const std::vector<Eigen::Index> traced_off = offsets(traced_slots);

  ComplexMatrix out = ComplexMatrix::Zero(kept, kept);
  for (Eigen::Index a = 0; a < kept; ++a) {
    for (Eigen::Index b = 0; b < kept; ++b) {
      Complex sum = 0.0;
      for (Eigen::Index t : traced_off) {
        sum += m(kept_off[a] + t, kept_off[b] + t);
      }
      out(a, b) = sum;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("commutator: dimension mismatch");
  }
  return a * b - b * a;
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw IntegrationError("hermitian_eig: eigensolver failed to converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
  const EigenSystem eig = hermitian_eig(h);
  const ComplexVector phases =
      (Complex(0.0, -t) * eig.values.cast<Complex>().array()).exp();
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix gibbs_exp(const ComplexMatrix& h, double beta) {
  const EigenSystem eig = hermitian_eig(h);
  const RealVector weights = (-beta * eig.values.array()).exp();
  return eig.vectors * weights.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& op,
                        double imag_tol) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols()) {
    throw ValidationError("real_expectation: dimension mismatch");
  }
  const Complex value = (rho * op).trace();
  if (std::abs(value.imag()) > imag_tol) {
    std::ostringstream msg;
    msg << "real_expectation: imaginary residue " << value.imag() << " exceeds "
        << imag_tol;
    throw IntegrationError(msg.str());
  }
  return value.real();
}

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  // basis order (g, e): sigma_y = -i(sigma_+ - sigma_-)
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  // basis order (g, e): sigma_z = |e><e| - |g><g|
  ComplexMatrix m(2, 2);
  m << -1, 0, 0, 1;
  return m;
}

ComplexMatrix pauli_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix annihilation(Eigen::Index n_trunc) {
  ComplexMatrix b = ComplexMatrix::Zero(n_trunc, n_trunc);
  for (Eigen::Index n = 1; n < n_trunc; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

ComplexMatrix number_operator(Eigen::Index n_trunc) {
  ComplexMatrix n = ComplexMatrix::Zero(n_trunc, n_trunc);
  for (Eigen::Index k = 0; k < n_trunc; ++k) n(k, k) = double(k);
  return n;
}

}  // namespace qdrive
