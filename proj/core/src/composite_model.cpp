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

#include "qdrive/composite_model.hpp"

#include <sstream>

namespace qdrive {

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::Drive: return "D";
    case Slot::System: return "S";
    case Slot::Environment: return "E";
  }
  return "?";
}

HilbertLayout::HilbertLayout(Eigen::Index d, Eigen::Index s, Eigen::Index e)
    : drive_dim_(d), system_dim_(s), env_dim_(e) {
  if (d < 1 || s < 1 || e < 0) {
    throw ValidationError("HilbertLayout: slot dimensions must be positive");
  }
}

HilbertLayout HilbertLayout::bipartite(Eigen::Index drive_dim, Eigen::Index system_dim) {
  return HilbertLayout(drive_dim, system_dim, 0);
}

HilbertLayout HilbertLayout::tripartite(Eigen::Index drive_dim, Eigen::Index system_dim,
                                        Eigen::Index env_dim) {
  if (env_dim < 1) throw ValidationError("HilbertLayout: environment dim must be >= 1");
  return HilbertLayout(drive_dim, system_dim, env_dim);
}

Eigen::Index HilbertLayout::dim(Slot s) const {
  switch (s) {
    case Slot::Drive: return drive_dim_;
    case Slot::System: return system_dim_;
    case Slot::Environment:
      if (!has_environment()) {
        throw ValidationError("HilbertLayout: no environment slot in this layout");
      }
      return env_dim_;
  }
  throw ValidationError("HilbertLayout: unknown slot");
}

Eigen::Index HilbertLayout::total_dim() const {
  return drive_dim_ * system_dim_ * (has_environment() ? env_dim_ : 1);
}

std::vector<Slot> HilbertLayout::slots() const {
  std::vector<Slot> out{Slot::Drive, Slot::System};
  if (has_environment()) out.push_back(Slot::Environment);
  return out;
}

std::vector<Eigen::Index> HilbertLayout::dims() const {
  std::vector<Eigen::Index> out{drive_dim_, system_dim_};
  if (has_environment()) out.push_back(env_dim_);
  return out;
}

HilbertLayout HilbertLayout::drop_environment() const {
  return bipartite(drive_dim_, system_dim_);
}

ComplexMatrix lift(const ComplexMatrix& op, const HilbertLayout& layout, Slot slot) {
  const Eigen::Index slot_dim = layout.dim(slot);  // throws for unknown/absent slot
  if (op.rows() != slot_dim || op.cols() != slot_dim) {
    std::ostringstream msg;
    msg << "lift: operator dim " << op.rows() << " does not match slot "
        << slot_name(slot) << " dim " << slot_dim;
    throw ValidationError(msg.str());
  }
  ComplexMatrix out = op;
  const std::vector<Slot> slots = layout.slots();
  // Build right-to-left so earlier slots end up slower-varying.
  bool seen = false;
  for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
    if (*it == slot) {
      seen = true;
      continue;
    }
    const ComplexMatrix eye = identity(layout.dim(*it));
    out = seen ? kron(eye, out) : kron(out, eye);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const HilbertLayout& layout,
                            const std::vector<Slot>& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set must be non-empty");
  const std::vector<Slot> slots = layout.slots();
  std::vector<bool> mask(slots.size(), false);
  for (Slot k : keep) {
    bool found = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i] == k) {
        mask[i] = true;
        found = true;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "partial_trace: slot " << slot_name(k) << " not present in layout";
      throw ValidationError(msg.str());
    }
  }
  return partial_trace(m, layout.dims(), mask);
}

FactorizedCoupling::FactorizedCoupling(Slot left_slot, Slot right_slot,
                                       std::vector<CouplingTerm> terms)
    : left_slot_(left_slot), right_slot_(right_slot), terms_(std::move(terms)) {
  if (left_slot_ == right_slot_) {
    throw ValidationError("FactorizedCoupling: slots must differ");
  }
  for (const CouplingTerm& term : terms_) {
    require_hermitian(term.left, "FactorizedCoupling.left");
    require_hermitian(term.right, "FactorizedCoupling.right");
    if (term.left.rows() != terms_.front().left.rows() ||
        term.right.rows() != terms_.front().right.rows()) {
      throw ValidationError("FactorizedCoupling: inconsistent term dimensions");
    }
  }
}

ComplexMatrix FactorizedCoupling::assemble(const HilbertLayout& layout) const {
  ComplexMatrix out = ComplexMatrix::Zero(layout.total_dim(), layout.total_dim());
  for (const CouplingTerm& term : terms_) {
    out += lift(term.left, layout, left_slot_) * lift(term.right, layout, right_slot_);
  }
  return out;
}

void validate_composite(const CompositeHamiltonian& ch, const HilbertLayout& layout) {
  require_hermitian(ch.h_s, "h_S");
  require_hermitian(ch.h_d, "h_D");
  if (ch.h_s.rows() != layout.dim(Slot::System)) {
    throw ValidationError("CompositeHamiltonian: h_S dim does not match layout");
  }
  if (ch.h_d.rows() != layout.dim(Slot::Drive)) {
    throw ValidationError("CompositeHamiltonian: h_D dim does not match layout");
  }
  const bool env_parts =
      ch.h_e.size() > 0 || !ch.h_se.empty() || !ch.h_de.empty();
  if (env_parts && !layout.has_environment()) {
    throw ValidationError(
        "CompositeHamiltonian: environment terms present but layout has no E slot");
  }
  if (ch.h_e.size() > 0) {
    require_hermitian(ch.h_e, "h_E");
    if (ch.h_e.rows() != layout.dim(Slot::Environment)) {
      throw ValidationError("CompositeHamiltonian: h_E dim does not match layout");
    }
  }
  auto check_coupling = [&](const FactorizedCoupling& c, Slot left, Slot right,
                            const char* name) {
    if (c.empty()) return;
    if (c.left_slot() != left || c.right_slot() != right) {
      std::ostringstream msg;
      msg << "CompositeHamiltonian: " << name << " must couple " << slot_name(left)
          << " to " << slot_name(right);
      throw ValidationError(msg.str());
    }
    if (c.terms().front().left.rows() != layout.dim(left) ||
        c.terms().front().right.rows() != layout.dim(right)) {
      std::ostringstream msg;
      msg << "CompositeHamiltonian: " << name << " factor dims do not match layout";
      throw ValidationError(msg.str());
    }
  };
  check_coupling(ch.h_sd, Slot::Drive, Slot::System, "h_SD");
  check_coupling(ch.h_se, Slot::System, Slot::Environment, "h_SE");
  check_coupling(ch.h_de, Slot::Drive, Slot::Environment, "h_DE");
}

ComplexMatrix assemble_total(const CompositeHamiltonian& ch, const HilbertLayout& layout) {
  validate_composite(ch, layout);
  ComplexMatrix total = lift(ch.h_s, layout, Slot::System);
  total += lift(ch.h_d, layout, Slot::Drive);
  if (ch.h_e.size() > 0) total += lift(ch.h_e, layout, Slot::Environment);
  if (!ch.h_sd.empty()) total += ch.h_sd.assemble(layout);
  if (!ch.h_se.empty()) total += ch.h_se.assemble(layout);
  if (!ch.h_de.empty()) total += ch.h_de.assemble(layout);
  return total;
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) return false;
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

ComplexMatrix product_state(const std::vector<ComplexMatrix>& factors,
                            const HilbertLayout& layout) {
  const std::vector<Eigen::Index> dims = layout.dims();
  if (factors.size() != dims.size()) {
    throw ValidationError("product_state: one density factor per layout slot required");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].rows() != dims[i]) {
      throw ValidationError("product_state: factor dim does not match its slot");
    }
    if (!is_density_matrix(factors[i])) {
      throw ValidationError("product_state: factor is not a density matrix");
    }
  }
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

}  // namespace qdrive
