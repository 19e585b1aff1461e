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

#include <doctest.h>

#include "qdrive/composite_model.hpp"
#include "test_helpers.hpp"

using namespace qdrive;
using qdrive::testing::max_abs;
using qdrive::testing::random_density;
using qdrive::testing::random_hermitian;

namespace {

// Small tripartite model with every term present, for assembly tests.
CompositeHamiltonian random_tripartite(std::uint64_t seed) {
  CompositeHamiltonian ch;
  ch.h_d = random_hermitian(3, seed);
  ch.h_s = random_hermitian(2, seed + 1);
  ch.h_e = random_hermitian(2, seed + 2);
  ch.h_sd = FactorizedCoupling(
      Slot::Drive, Slot::System,
      {CouplingTerm{random_hermitian(3, seed + 3), random_hermitian(2, seed + 4)},
       CouplingTerm{random_hermitian(3, seed + 5), random_hermitian(2, seed + 6)}});
  ch.h_se = FactorizedCoupling(
      Slot::System, Slot::Environment,
      {CouplingTerm{random_hermitian(2, seed + 7), random_hermitian(2, seed + 8)}});
  ch.h_de = FactorizedCoupling(
      Slot::Drive, Slot::Environment,
      {CouplingTerm{random_hermitian(3, seed + 9), random_hermitian(2, seed + 10)}});
  return ch;
}

}  // namespace

TEST_CASE("lift: definition, identity, trace factorization") {
  const HilbertLayout layout = HilbertLayout::bipartite(3, 2);
  CHECK(max_abs(lift(pauli_z(), layout, Slot::System) - kron(identity(3), pauli_z())) ==
        0.0);
  CHECK(max_abs(lift(identity(3), layout, Slot::Drive) - identity(6)) == 0.0);

  const ComplexMatrix op = random_hermitian(3, 7);
  CHECK(std::abs(lift(op, layout, Slot::Drive).trace() - op.trace() * 2.0) <= 1e-12);
}

TEST_CASE("lift: middle slot of a tripartite layout") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const ComplexMatrix got = lift(pauli_x(), layout, Slot::System);
  CHECK(max_abs(got - kron(identity(3), kron(pauli_x(), identity(2)))) == 0.0);
}

TEST_CASE("lift: unknown slot and dimension mismatch") {
  const HilbertLayout layout = HilbertLayout::bipartite(3, 2);
  CHECK_THROWS_AS(lift(identity(2), layout, Slot::Environment), ValidationError);
  CHECK_THROWS_AS(lift(identity(4), layout, Slot::System), ValidationError);
}

TEST_CASE("lift: linear, and distinct slots commute") {
  const HilbertLayout layout = HilbertLayout::tripartite(2, 2, 3);
  const ComplexMatrix a = random_hermitian(2, 61);
  const ComplexMatrix b = random_hermitian(2, 62);
  CHECK(max_abs(lift(ComplexMatrix(2.0 * a - 0.5 * b), layout, Slot::System) -
                (2.0 * lift(a, layout, Slot::System) -
                 0.5 * lift(b, layout, Slot::System))) <= 1e-13);
  const ComplexMatrix ls = lift(a, layout, Slot::System);
  const ComplexMatrix ld = lift(b, layout, Slot::Drive);
  CHECK(max_abs(commutator(ls, ld)) <= 1e-12);
}

TEST_CASE("assemble_total: zero couplings give the sum of lifted locals") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  CompositeHamiltonian ch = random_tripartite(100);
  ch.h_sd = FactorizedCoupling{};
  ch.h_se = FactorizedCoupling{};
  ch.h_de = FactorizedCoupling{};
  const ComplexMatrix total = assemble_total(ch, layout);
  const ComplexMatrix expected = lift(ch.h_d, layout, Slot::Drive) +
                                 lift(ch.h_s, layout, Slot::System) +
                                 lift(ch.h_e, layout, Slot::Environment);
  CHECK(max_abs(total - expected) <= 1e-13);
}

TEST_CASE("assemble_total: Hermitian with real diagonal expectations") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const ComplexMatrix total = assemble_total(random_tripartite(200), layout);
  CHECK(is_hermitian(total, 1e-12));
  const ComplexMatrix psi = testing::random_complex(12, 201).col(0).normalized();
  const Complex expect = (psi.adjoint() * total * psi)(0, 0);
  CHECK(std::abs(expect.imag()) <= 1e-12);
}

TEST_CASE("assemble_total: linear in each part") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  CompositeHamiltonian ch = random_tripartite(300);
  const ComplexMatrix base = assemble_total(ch, layout);
  CompositeHamiltonian scaled = ch;
  scaled.h_s = 2.0 * ch.h_s;
  const ComplexMatrix bumped = assemble_total(scaled, layout);
  CHECK(max_abs(bumped - base - lift(ch.h_s, layout, Slot::System)) <= 1e-12);
}

TEST_CASE("FactorizedCoupling rejects non-Hermitian factors") {
  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(FactorizedCoupling(Slot::Drive, Slot::System,
                                     {CouplingTerm{bad, pauli_x()}}),
                  ValidationError);
}

TEST_CASE("product_state: pure product projector") {
  const HilbertLayout layout = HilbertLayout::bipartite(2, 2);
  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  ComplexMatrix vacuum = ComplexMatrix::Zero(2, 2);
  vacuum(0, 0) = 1.0;
  const ComplexMatrix rho = product_state({vacuum, excited}, layout);
  // Rank-1 projector onto |0, e>, flattened index 0*2 + 1 = 1.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(max_abs(rho - expected) == 0.0);
}

TEST_CASE("product_state: trace one and partial-trace inversion") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const ComplexMatrix rho_d = random_density(3, 71);
  const ComplexMatrix rho_s = random_density(2, 72);
  const ComplexMatrix rho_e = random_density(2, 73);
  const ComplexMatrix rho = product_state({rho_d, rho_s, rho_e}, layout);
  CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) <= 1e-12);
  CHECK(max_abs(partial_trace(rho, layout, {Slot::System}) - rho_s) <= 1e-12);
  CHECK(max_abs(partial_trace(rho, layout, {Slot::Drive}) - rho_d) <= 1e-12);
}

TEST_CASE("product_state rejects non-density factors") {
  const HilbertLayout layout = HilbertLayout::bipartite(2, 2);
  const ComplexMatrix good = random_density(2, 81);
  CHECK_THROWS_AS(product_state({good, ComplexMatrix(2.0 * good)}, layout),
                  ValidationError);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(product_state({good, negative}, layout), ValidationError);
}

TEST_CASE("layout slot queries") {
  const HilbertLayout bi = HilbertLayout::bipartite(4, 2);
  CHECK(bi.total_dim() == 8);
  CHECK(!bi.has_environment());
  CHECK_THROWS_AS(bi.dim(Slot::Environment), ValidationError);
  const HilbertLayout tri = HilbertLayout::tripartite(4, 2, 3);
  CHECK(tri.total_dim() == 24);
  CHECK(tri.drop_environment().total_dim() == 8);
}
