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

#include "qdrive/classical_limit.hpp"
#include "qdrive/energetics.hpp"
#include "qdrive/jaynes_cummings.hpp"
#include "test_helpers.hpp"

using namespace qdrive;
using qdrive::testing::max_abs;
using qdrive::testing::random_density;
using qdrive::testing::random_hermitian;

namespace {

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

TEST_CASE("drive_expectations: conserved factors stay constant") {
  const ComplexMatrix h_d = random_hermitian(4, 230);
  // B = H_D^2 commutes with H_D.
  const ComplexMatrix b = h_d * h_d;
  const ClassicalDriveSpec spec(
      h_d, random_density(4, 231),
      FactorizedCoupling(Slot::Drive, Slot::System,
                         {CouplingTerm{ComplexMatrix(0.5 * (b + b.adjoint())),
                                       pauli_x()}}));
  const double v0 = drive_expectations(spec, 0.0)[0];
  for (double t : {0.5, 1.7, 4.0}) {
    CHECK(drive_expectations(spec, t)[0] == doctest::Approx(v0).epsilon(1e-12));
  }
  // Conserved factors also have vanishing rates.
  CHECK(std::abs(drive_expectation_rates(spec, 1.0)[0]) <= 1e-12);
}

TEST_CASE("drive_expectations: coherent state rotates at the drive frequency") {
  const JCParams params{1.0, 0.5, 40};
  const DriveState state = coherent_state(2.0, 40);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);
  // <B_1> = sqrt(2) Re<b>, <B_2> = -sqrt(2) Im<b> for <b> = alpha e^{-i t}.
  for (double t : {0.0, 0.4, 1.1, 3.0}) {
    const std::vector<double> vals = drive_expectations(spec, t);
    const Complex b_expect = 2.0 * std::polar(1.0, -params.omega * t);
    CHECK(vals[0] == doctest::Approx(std::sqrt(2.0) * b_expect.real()).epsilon(1e-9));
    CHECK(vals[1] == doctest::Approx(-std::sqrt(2.0) * b_expect.imag()).epsilon(1e-9));
    CHECK(std::hypot(vals[0], vals[1]) ==
          doctest::Approx(std::sqrt(2.0) * 2.0).epsilon(1e-9));
  }
}

TEST_CASE("drive_expectations: Fock states have no quadrature average") {
  const JCParams params{1.0, 0.5, 6};
  const ClassicalDriveSpec spec = jc_classical_spec(fock_state(3, 6), params);
  for (double t : {0.0, 0.9, 2.2}) {
    for (double v : drive_expectations(spec, t)) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("build_classical_hamiltonian: undriven limit and the JC closed form") {
  const JCParams params{1.0, 0.5, 40};
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();

  // Zero couplings: H_CL = H_S.
  const ClassicalDriveSpec bare(
      params.omega * number_operator(40), coherent_state(2.0, 40).density(),
      FactorizedCoupling(Slot::Drive, Slot::System, {}));
  CHECK(max_abs(build_classical_hamiltonian(h_s, bare, 1.3) - h_s) == 0.0);

  // Coherent drive: the rotating closed form; two construction routes agree.
  const DriveState state = coherent_state(2.0, 40);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);
  for (double t : {0.0, 0.7, 2.9}) {
    CHECK(max_abs(build_classical_hamiltonian(h_s, spec, t) -
                  jc_classical_hamiltonian(state, params, t)) <= 1e-12);
  }

  // Fock drive: the effective interaction vanishes, H_CL = H_S.
  const ClassicalDriveSpec fock_spec = jc_classical_spec(fock_state(2, 40), params);
  CHECK(max_abs(build_classical_hamiltonian(h_s, fock_spec, 0.8) - h_s) <= 1e-12);
}

TEST_CASE("build_classical_hamiltonian: H_D enters only through the drive state") {
  // Shifting H_D by a constant leaves rho_D(t), hence H_CL, unchanged;
  // no term proportional to H_D appears.
  const JCParams params{1.0, 0.5, 30};
  const DriveState state = coherent_state(1.5, 30);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();
  const ClassicalDriveSpec spec(ch.h_d, state.density(), ch.h_sd);
  const ClassicalDriveSpec shifted(
      ComplexMatrix(ch.h_d + 5.0 * identity(30)), state.density(), ch.h_sd);
  for (double t : {0.3, 1.9}) {
    CHECK(max_abs(build_classical_hamiltonian(h_s, spec, t) -
                  build_classical_hamiltonian(h_s, shifted, t)) <= 1e-11);
  }
}

TEST_CASE("classical_power: static drive states inject nothing") {
  const ComplexMatrix h_d = random_hermitian(4, 240);
  const EigenSystem eig = hermitian_eig(h_d);
  const ComplexMatrix stationary = eig.vectors.col(1) * eig.vectors.col(1).adjoint();
  const ClassicalDriveSpec spec(
      h_d, stationary,
      FactorizedCoupling(Slot::Drive, Slot::System,
                         {CouplingTerm{random_hermitian(4, 241), pauli_x()}}));
  const ComplexMatrix h_s = 0.5 * pauli_z();
  CHECK(std::abs(classical_power(random_density(2, 242), spec, h_s, 0.9)) <= 1e-11);
}

TEST_CASE("classical_power: integrated JC work reproduces -omega sin^2(g|alpha|t)") {
  const JCParams params{1.0, 0.5, 60};
  const double alpha = 3.0;
  const DriveState state = coherent_state(alpha, 60);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();

  const double t_end = 3.0;
  const double dt = 1e-3;
  const std::vector<double> grid = uniform_grid(t_end, dt);
  double work = 0.0, p_prev = 0.0;
  bool first = true;
  double worst = 0.0;
  const HamiltonianProvider provider = [&](double t) {
    return jc_classical_hamiltonian(state, params, t);
  };
  const StepObserver observer = [&](double t, const ComplexMatrix& rho) {
    const double p = classical_power(rho, spec, h_s, t);
    if (!first) work += 0.5 * dt * (p_prev + p);
    first = false;
    p_prev = p;
    worst = std::max(worst,
                     std::abs(work - coherent_classical_work(params, alpha, t)));
  };
  evolve_time_dependent(excited_qubit(), provider, grid, dt, observer);
  CHECK(worst <= 1e-6);
}

TEST_CASE("classical_power: matches a centered finite difference of <H_CL>") {
  const JCParams params{1.0, 0.5, 40};
  const DriveState state = coherent_state(2.0, 40);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();

  // Along the classically driven trajectory, d<H_CL>/dt equals the explicit
  // term alone (the commutator part drops for S-only unitary evolution).
  const double t = 1.1, delta = 1e-4;
  const HamiltonianProvider provider = [&](double t_) {
    return jc_classical_hamiltonian(state, params, t_);
  };
  const Trajectory traj = evolve_time_dependent(
      excited_qubit(), provider, {0.0, t - delta, t, t + delta}, 1e-4);
  const double e_minus =
      real_expectation(traj.states[1], provider(t - delta));
  const double e_plus = real_expectation(traj.states[3], provider(t + delta));
  const double fd = (e_plus - e_minus) / (2.0 * delta);
  CHECK(classical_power(traj.states[2], spec, h_s, t) ==
        doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("classical_power equals injected_power on enforced product states") {
  // The factorized-state identity: the composite injected power evaluated on
  // rho_D(t) (x) rho_S equals the classical power for any system state and
  // any time.
  const JCParams params{1.0, 0.5, 25};
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);
  const ComplexMatrix h_sd = ch.h_sd.assemble(layout);
  const ComplexMatrix h_d_l = lift(ch.h_d, layout, Slot::Drive);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();
  const DriveState state = coherent_state(1.8, 25);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);

  std::mt19937_64 rng(250);
  std::uniform_real_distribution<double> time_dist(0.0, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = time_dist(rng);
    const ComplexMatrix rho_s = random_density(2, 260 + std::uint64_t(trial));
    const ComplexMatrix rho = kron(spec.drive_state(t), rho_s);
    const double quantum = injected_power(rho, h_sd, h_d_l);
    const double classical = classical_power(rho_s, spec, h_s, t);
    CHECK(std::abs(quantum - classical) <= 1e-10);
  }
}

TEST_CASE("classical_power: the heat-exchange term enters with a dissipator") {
  const JCParams params{1.0, 0.5, 20};
  const DriveState state = coherent_state(1.0, 20);
  const ClassicalDriveSpec spec = jc_classical_spec(state, params);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();
  const ComplexMatrix rho_s = random_density(2, 270);
  const LindbladSet ls({0.5 * pauli_minus()});
  const ComplexMatrix diss = apply_dissipator(rho_s, ls);

  const double without = classical_power(rho_s, spec, h_s, 0.6);
  const double with = classical_power(rho_s, spec, h_s, 0.6, &diss);
  const double h_cl_term =
      -real_expectation(diss, build_classical_hamiltonian(h_s, spec, 0.6));
  CHECK(with == doctest::Approx(without + h_cl_term).epsilon(1e-12));
}

TEST_CASE("quantum-classical deviation shrinks over a fixed number of Rabi periods") {
  // Convergence to classical driving holds on the classical oscillation
  // timescale: over one period [0, pi/(g sqrt(nbar))] the maximum deviation
  // decreases with nbar (oracle values 8.9e-2, 2.4e-2, 6.1e-3).
  const double g = 0.5;
  double previous = 1e9;
  for (double nbar : {25.0, 100.0, 400.0}) {
    JCParams params{1.0, g, suggested_n_trunc(nbar)};
    const double alpha = std::sqrt(nbar);
    const double t_end = M_PI / (g * alpha);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double t = t_end * double(i) / 400.0;
      worst = std::max(worst, std::abs(coherent_quantum_work(params, alpha, t) -
                                       coherent_classical_work(params, alpha, t)));
    }
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(previous <= 7e-3);
}
