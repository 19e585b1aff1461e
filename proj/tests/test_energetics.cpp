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

#include <cmath>

#include "qdrive/energetics.hpp"
#include "qdrive/jaynes_cummings.hpp"
#include "test_helpers.hpp"

using namespace qdrive;
using qdrive::testing::max_abs;
using qdrive::testing::random_density;
using qdrive::testing::random_hermitian;

namespace {

CompositeHamiltonian random_tripartite(std::uint64_t seed) {
  CompositeHamiltonian ch;
  ch.h_d = random_hermitian(3, seed);
  ch.h_s = random_hermitian(2, seed + 1);
  ch.h_e = random_hermitian(2, seed + 2);
  ch.h_sd = FactorizedCoupling(
      Slot::Drive, Slot::System,
      {CouplingTerm{random_hermitian(3, seed + 3), random_hermitian(2, seed + 4)}});
  ch.h_se = FactorizedCoupling(
      Slot::System, Slot::Environment,
      {CouplingTerm{random_hermitian(2, seed + 5), random_hermitian(2, seed + 6)}});
  ch.h_de = FactorizedCoupling(
      Slot::Drive, Slot::Environment,
      {CouplingTerm{random_hermitian(3, seed + 7), random_hermitian(2, seed + 8)}});
  return ch;
}

ComplexMatrix excited_qubit() {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  return rho;
}

std::vector<double> uniform_grid(double t_max, double dt) {
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::llround(t_max / dt));
  for (std::size_t i = 0; i <= n; ++i) grid.push_back(double(i) * dt);
  return grid;
}

}  // namespace

TEST_CASE("injected_power: vanishing and commuting couplings") {
  const HilbertLayout layout = HilbertLayout::bipartite(3, 2);
  const ComplexMatrix rho = random_density(6, 120);
  const ComplexMatrix h_d = random_hermitian(3, 121);
  const ComplexMatrix h_d_l = lift(h_d, layout, Slot::Drive);
  CHECK(injected_power(rho, ComplexMatrix::Zero(6, 6), h_d_l) == 0.0);

  // A drive factor that is a function of H_D commutes with it: zero power.
  const ComplexMatrix b = h_d * h_d;
  const FactorizedCoupling coupling(
      Slot::Drive, Slot::System,
      {CouplingTerm{ComplexMatrix(0.5 * (b + b.adjoint())), pauli_x()}});
  CHECK(std::abs(injected_power(rho, coupling.assemble(layout), h_d_l)) <= 1e-12);
}

TEST_CASE("injected_power: matches the differentiated closed form along the JC flow") {
  const JCParams params{1.0, 0.5, 2};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix h = assemble_total(ch, layout);
  const ComplexMatrix h_sd = ch.h_sd.assemble(layout);
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  const ComplexMatrix rho0 =
      product_state({fock_state(0, 2).density(), excited_qubit()}, layout);
  const double omega0 = rabi_frequency(params, 0);
  for (double t : {0.0, 0.3, 0.7, 1.2, 2.5}) {
    const Trajectory traj = evolve_unitary(rho0, h, {0.0, t + 1e-12});
    // d/dt [ -omega sin^2(Omega_0 t) ] = -omega Omega_0 sin(2 Omega_0 t)
    const double expected = -params.omega * omega0 * std::sin(2.0 * omega0 * t);
    CHECK(injected_power(traj.states.back(), h_sd, h_d_l) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("exact_heat_powers: structural zeros") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  CompositeHamiltonian ch = random_tripartite(130);
  const ComplexMatrix rho = random_density(12, 131);

  CompositeHamiltonian closed = ch;
  closed.h_se = FactorizedCoupling{};
  closed.h_de = FactorizedCoupling{};
  const HeatPowers none = exact_heat_powers(rho, closed, layout);
  CHECK(std::abs(none.q_s) <= 1e-12);
  CHECK(std::abs(none.q_d) <= 1e-12);

  CompositeHamiltonian no_de = ch;
  no_de.h_de = FactorizedCoupling{};
  CHECK(std::abs(exact_heat_powers(rho, no_de, layout).q_d) <= 1e-12);
}

TEST_CASE("exact_heat_powers: random composite vs the direct full-space traces") {
  const HilbertLayout layout = HilbertLayout::tripartite(2, 2, 2);
  for (std::uint64_t seed : {140u, 150u, 160u}) {
    CompositeHamiltonian ch;
    ch.h_d = random_hermitian(2, seed);
    ch.h_s = random_hermitian(2, seed + 1);
    ch.h_e = random_hermitian(2, seed + 2);
    ch.h_sd = FactorizedCoupling(
        Slot::Drive, Slot::System,
        {CouplingTerm{random_hermitian(2, seed + 3), random_hermitian(2, seed + 4)}});
    ch.h_se = FactorizedCoupling(
        Slot::System, Slot::Environment,
        {CouplingTerm{random_hermitian(2, seed + 5), random_hermitian(2, seed + 6)}});
    ch.h_de = FactorizedCoupling(
        Slot::Drive, Slot::Environment,
        {CouplingTerm{random_hermitian(2, seed + 7), random_hermitian(2, seed + 8)}});
    const ComplexMatrix rho = random_density(8, seed + 9);

    // Oracle: evaluate the commutator traces with plain Eigen expressions on
    // the full space, no kernel precomputation or partial-trace shortcuts.
    const Complex mi(0.0, -1.0);
    const ComplexMatrix h_s_l = lift(ch.h_s, layout, Slot::System);
    const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
    const ComplexMatrix h_sd_l = ch.h_sd.assemble(layout);
    const ComplexMatrix h_se_l = ch.h_se.assemble(layout);
    const ComplexMatrix h_de_l = ch.h_de.assemble(layout);
    const Complex qs_oracle =
        mi * ((rho * (h_se_l * h_s_l - h_s_l * h_se_l)).trace() +
              (rho * ((h_se_l + h_de_l) * h_sd_l - h_sd_l * (h_se_l + h_de_l))).trace());
    const Complex qd_oracle = mi * (rho * (h_de_l * h_d_l - h_d_l * h_de_l)).trace();

    const HeatPowers got = exact_heat_powers(rho, ch, layout);
    CHECK(got.q_s == doctest::Approx(qs_oracle.real()).epsilon(1e-11));
    CHECK(got.q_d == doctest::Approx(qd_oracle.real()).epsilon(1e-11));
  }
}

TEST_CASE("reduced_heat_powers: unitary limit and a system-local decay") {
  const HilbertLayout layout = HilbertLayout::bipartite(3, 2);
  const ComplexMatrix h_s_l = lift(random_hermitian(2, 170), layout, Slot::System);
  const ComplexMatrix h_d_l = lift(random_hermitian(3, 171), layout, Slot::Drive);
  const ComplexMatrix zero = ComplexMatrix::Zero(6, 6);

  const HeatPowers none = reduced_heat_powers(zero, h_s_l, zero, h_d_l);
  CHECK(none.q_s == 0.0);
  CHECK(none.q_d == 0.0);

  // One decay channel acting on the system alone, H_SD = 0: the dissipator
  // commutes with everything on the drive factor, so dQ_D/dt = 0. Hand trace:
  // Tr{D (H_D x I)} = sum over drive blocks of h_D(d,d) * Tr_S{D_S(rho_d)} = 0.
  const LindbladSet ls({lift(ComplexMatrix(0.4 * pauli_minus()), layout, Slot::System)});
  const ComplexMatrix rho = product_state(
      {random_density(3, 172), random_density(2, 173)}, layout);
  const ComplexMatrix diss = apply_dissipator(rho, ls);
  const HeatPowers got = reduced_heat_powers(diss, h_s_l, zero, h_d_l);
  CHECK(std::abs(got.q_d) <= 1e-12);
  CHECK(std::abs(got.q_s) > 1e-6);  // the system does dissipate
}

TEST_CASE("extracted_drive_power: stationary states and structural reductions") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const CompositeHamiltonian ch = random_tripartite(180);
  const ComplexMatrix h = assemble_total(ch, layout);
  const EigenSystem eig = hermitian_eig(h);
  const ComplexMatrix stationary = eig.vectors.col(2) * eig.vectors.col(2).adjoint();
  CHECK(std::abs(extracted_drive_power(stationary, ch, layout)) <= 1e-10);

  // Without drive-environment coupling the whole drain is the injected power.
  CompositeHamiltonian no_de = ch;
  no_de.h_de = FactorizedCoupling{};
  const ComplexMatrix rho = random_density(12, 181);
  const ComplexMatrix rho_sd = partial_trace(rho, layout, {Slot::Drive, Slot::System});
  const HilbertLayout sd = layout.drop_environment();
  const double wq = injected_power(rho_sd, no_de.h_sd.assemble(sd),
                                   lift(no_de.h_d, sd, Slot::Drive));
  CHECK(extracted_drive_power(rho, no_de, layout) ==
        doctest::Approx(wq).epsilon(1e-11));
}

TEST_CASE("extracted_drive_power: centered finite difference along a trajectory") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const CompositeHamiltonian ch = random_tripartite(190);
  const ComplexMatrix h = assemble_total(ch, layout);
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  const ComplexMatrix rho0 = random_density(12, 191);
  const double t = 0.8, delta = 1e-4;
  const Trajectory traj = evolve_unitary(rho0, h, {0.0, t - delta, t, t + delta});
  const double hd_minus = real_expectation(traj.states[1], h_d_l);
  const double hd_plus = real_expectation(traj.states[3], h_d_l);
  const double fd = -(hd_plus - hd_minus) / (2.0 * delta);
  CHECK(extracted_drive_power(traj.states[2], ch, layout) ==
        doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("drive continuity and first law hold per state (algebraic identities)") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CompositeHamiltonian ch = random_tripartite(200 + 17 * seed);
    const ComplexMatrix rho = random_density(12, 300 + seed);
    const ComplexMatrix h = assemble_total(ch, layout);

    const HilbertLayout sd = layout.drop_environment();
    const ComplexMatrix rho_sd = partial_trace(rho, layout, {Slot::Drive, Slot::System});
    const double wq = injected_power(rho_sd, ch.h_sd.assemble(sd),
                                     lift(ch.h_d, sd, Slot::Drive));
    const HeatPowers heat = exact_heat_powers(rho, ch, layout);

    // -d<H_D>/dt = dW_Q/dt + dQ_D/dt
    CHECK(std::abs(extracted_drive_power(rho, ch, layout) - (wq + heat.q_d)) <= 1e-10);

    // d<I_D x H_S + H_SD>/dt = dW_Q/dt - dQ_S/dt
    const ComplexMatrix g =
        lift(ch.h_s, layout, Slot::System) + ch.h_sd.assemble(layout);
    const Complex dg = Complex(0.0, -1.0) * (rho * (g * h - h * g)).trace();
    CHECK(std::abs(dg.imag()) <= 1e-10);
    CHECK(std::abs(dg.real() - (wq - heat.q_s)) <= 1e-10);
  }
}

TEST_CASE("accumulate_ledger: zero-coupling model gives an identically zero ledger") {
  const HilbertLayout layout = HilbertLayout::bipartite(3, 2);
  CompositeHamiltonian ch;
  ch.h_d = random_hermitian(3, 210);
  ch.h_s = random_hermitian(2, 211);
  const ComplexMatrix rho0 =
      product_state({random_density(3, 212), random_density(2, 213)}, layout);
  const Trajectory traj =
      evolve_unitary(rho0, assemble_total(ch, layout), uniform_grid(2.0, 0.01));
  const EnergyLedger ledger = accumulate_ledger(traj, ch, layout, LindbladSet{});
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    CHECK(std::abs(ledger.w_q[i]) <= 1e-12);
    CHECK(std::abs(ledger.q_tot[i]) <= 1e-12);
    CHECK(ledger.residual[i] <= 1e-12);
  }
}

TEST_CASE("accumulate_ledger: unitary JC work matches the closed form") {
  const JCParams params{1.0, 0.5, 2};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix rho0 =
      product_state({fock_state(0, 2).density(), excited_qubit()}, layout);
  const Trajectory traj = evolve_lindblad(rho0, assemble_total(ch, layout), LindbladSet{},
                                          uniform_grid(5.0, 1e-3), 1e-3);
  const EnergyLedger ledger = accumulate_ledger(traj, ch, layout, LindbladSet{});
  double worst = 0.0;
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    worst = std::max(worst, std::abs(ledger.w_q[i] -
                                     fock_quantum_work(params, 0, ledger.times[i])));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("accumulate_ledger: dissipative ledger bookkeeping invariants") {
  const JCParams params{1.0, 0.5, 3};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const LindbladSet ls = golden_rule_dissipator(params, 0.2);
  const ComplexMatrix rho0 =
      product_state({fock_state(0, 3).density(), excited_qubit()}, layout);

  LedgerAccumulator acc(ch, layout, ls, 10);
  const StepObserver observer = [&](double t, const ComplexMatrix& rho) {
    acc.add(t, rho);
  };
  evolve_lindblad(rho0, assemble_total(ch, layout), ls, {0.0, 10.0}, 1e-3, observer);
  const EnergyLedger ledger = acc.finish();
  CHECK(ledger.size() == 1001);
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    CHECK(std::abs(ledger.q_tot[i] - (ledger.q_s[i] + ledger.q_d[i])) <= 1e-10);
    CHECK(ledger.residual[i] <= 1e-6);
  }
  // Energy flows out: cumulative heats grow, injected work turns negative.
  CHECK(ledger.q_tot.back() > 0.5);
  CHECK(ledger.w_q.back() < 0.0);
}

TEST_CASE("accumulate_ledger: explicit-environment mode cross-checks dQ_tot") {
  const HilbertLayout layout = HilbertLayout::tripartite(3, 2, 2);
  const CompositeHamiltonian ch = random_tripartite(220);
  const ComplexMatrix rho0 = product_state(
      {random_density(3, 221), random_density(2, 222), random_density(2, 223)}, layout);
  const Trajectory traj =
      evolve_unitary(rho0, assemble_total(ch, layout), uniform_grid(1.0, 1e-3));
  // The single-trace total-heat consistency check runs inside per sample.
  const EnergyLedger ledger = accumulate_ledger(traj, ch, layout);
  CHECK(ledger.size() == 1001);
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    CHECK(ledger.residual[i] <= 1e-5);  // trapezoid quadrature floor
  }
  // explicit-E mode refuses oversized environments
  CHECK_THROWS_AS(
      LedgerAccumulator(ch, HilbertLayout::tripartite(3, 2, 16), 1),
      ValidationError);
}

TEST_CASE("unitary_energy_ledger agrees with the trajectory route") {
  const JCParams params{1.0, 0.5, 24};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix rho0 =
      product_state({coherent_state(1.0, 24).density(), excited_qubit()}, layout);

  const EnergyLedger fast = unitary_energy_ledger(ch, layout, rho0, 1e-2, 200, 1);
  const Trajectory traj = evolve_unitary(rho0, assemble_total(ch, layout),
                                         uniform_grid(2.0, 1e-2));
  const EnergyLedger slow = accumulate_ledger(traj, ch, layout, LindbladSet{});
  REQUIRE(fast.size() == slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(std::abs(fast.w_q[i] - slow.w_q[i]) <= 1e-10);
    CHECK(std::abs(fast.h_d_expect[i] - slow.h_d_expect[i]) <= 1e-10);
  }
}
