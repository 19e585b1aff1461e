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

#include "qdrive/tensor_algebra.hpp"

// Hilbert-space layout for the drive (x) system (x) environment composite,
// operator lifting into the full space, and assembly of the six-part total
// Hamiltonian. The global slot order is fixed to D (x) S (x) E; every lift
// and partial trace goes through this single convention.

namespace qdrive {

enum class Slot { Drive, System, Environment };

const char* slot_name(Slot s);

/// Ordered subsystem dimensions. The environment slot is optional: bipartite
/// S-D layouts drive the dissipative (master-equation) mode, the tripartite
/// form exists for small explicit-environment validation runs.
class HilbertLayout {
 public:
  static HilbertLayout bipartite(Eigen::Index drive_dim, Eigen::Index system_dim);
  static HilbertLayout tripartite(Eigen::Index drive_dim, Eigen::Index system_dim,
                                  Eigen::Index env_dim);

  bool has_environment() const { return env_dim_ > 0; }
  Eigen::Index dim(Slot s) const;
  Eigen::Index total_dim() const;
  std::vector<Slot> slots() const;
  std::vector<Eigen::Index> dims() const;
  /// The same layout with the environment slot dropped.
  HilbertLayout drop_environment() const;

 private:
  HilbertLayout(Eigen::Index d, Eigen::Index s, Eigen::Index e);
  Eigen::Index drive_dim_;
  Eigen::Index system_dim_;
  Eigen::Index env_dim_;  // 0 when absent
};

/// op acting on `slot`, identity elsewhere, in global slot order.
ComplexMatrix lift(const ComplexMatrix& op, const HilbertLayout& layout, Slot slot);

/// Partial trace keeping the given slots (result keeps global slot order).
ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertLayout& layout,
                            const std::vector<Slot>& keep);

/// One Hermitian product term of an interaction: left (x) right.
struct CouplingTerm {
  ComplexMatrix left;
  ComplexMatrix right;
};

/// Interaction Hamiltonian stored term by term as sum_a B_a (x) A_a with
/// Hermitian factors. Terms stay separate because the classical-driving
/// reduction needs each B_a, A_a individually.
class FactorizedCoupling {
 public:
  FactorizedCoupling() = default;  // empty coupling
  FactorizedCoupling(Slot left_slot, Slot right_slot, std::vector<CouplingTerm> terms);

  bool empty() const { return terms_.empty(); }
  Slot left_slot() const { return left_slot_; }
  Slot right_slot() const { return right_slot_; }
  const std::vector<CouplingTerm>& terms() const { return terms_; }

  /// sum_a lift(B_a) * lift(A_a) on the layout's full space.
  ComplexMatrix assemble(const HilbertLayout& layout) const;

 private:
  Slot left_slot_ = Slot::Drive;
  Slot right_slot_ = Slot::System;
  std::vector<CouplingTerm> terms_;
};

/// The six pieces of the composite Hamiltonian. h_e and the couplings other
/// than h_sd may be absent (empty), which contributes zero to the total.
struct CompositeHamiltonian {
  ComplexMatrix h_s;
  ComplexMatrix h_d;
  ComplexMatrix h_e;  // 0x0 when absent
  FactorizedCoupling h_sd;
  FactorizedCoupling h_se;
  FactorizedCoupling h_de;
};

/// Throws ValidationError unless all parts are dimension-consistent with the
/// layout and the local terms are Hermitian.
void validate_composite(const CompositeHamiltonian& ch, const HilbertLayout& layout);

/// The full six-term sum on the layout's total space. Hermitian.
ComplexMatrix assemble_total(const CompositeHamiltonian& ch, const HilbertLayout& layout);

bool is_density_matrix(const ComplexMatrix& rho, double tol = 1e-10);

/// Kronecker product of density factors in slot order. Unit trace.
ComplexMatrix product_state(const std::vector<ComplexMatrix>& factors,
                            const HilbertLayout& layout);

}  // namespace qdrive
