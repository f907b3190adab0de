// Copyright 2026 The deloc Authors
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

/**
 * @file
 * Deciding local-unitary equivalence to a controlled-unitary operation.
 *
 * A gate controlled from A has the form
 *
 *     U = (sum_i P_i (x) v_i) (u_local (x) I)
 *
 * with mutually orthogonal projectors P_i summing to the identity on H_A,
 * unitaries v_i on H_B and a unitary u_local on H_A. The B-controlled form is
 * the mirror image U = (sum_i v_i (x) P_i) (I (x) u_local). Such a gate
 * allows the piece of quantum information on the target side to be
 * restored by LOCC, and no other gate does.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deloc/linalg.hpp"

namespace deloc {

struct ControlledBlock {
  ComplexMatrix projector;  // on the control side
  ComplexMatrix target;     // unitary on the target side
};

struct ControlledUnitaryForm {
  Side control_side = Side::A;
  int d_a = 0;
  int d_b = 0;
  ComplexMatrix u_local;  // on the control side
  std::vector<ControlledBlock> blocks;

  Side target_side() const { return other(control_side); }
  int control_dim() const { return control_side == Side::A ? d_a : d_b; }
  int target_dim() const { return control_side == Side::A ? d_b : d_a; }

  /**
   * Checks projector orthogonality and completeness, unitarity of u_local
   * and of every target, and that distinct blocks are not equal up to phase.
   * Throws MalformedFormError describing the first violation.
   */
  void validate(double tol = 1e-9) const;
};

/** Outcome of a one-sided detection, including why it failed if it did. */
struct Detection {
  std::optional<ControlledUnitaryForm> form;
  double residual = -1.0;  // reconstruction residual; negative if never formed
  int attempts = 0;
  std::string note;
};

/** Overall verdict for a gate. */
enum class GateClass {
  Local,          // operator Schmidt rank 1
  Controlled,     // locally equivalent to a controlled-unitary
  NotControlled,  // delocalizes beyond one-piece LOCC relocalization
};

const char* to_string(GateClass c);

struct Classification {
  int osr = 0;
  RealVector schmidt_coefficients;
  Detection from_a;
  Detection from_b;
  bool relocalizable = false;
  GateClass label = GateClass::NotControlled;
  ToleranceConfig tol;
  std::uint64_t seed = 0;

  const std::optional<ControlledUnitaryForm>& controlled_from_a() const {
    return from_a.form;
  }
  const std::optional<ControlledUnitaryForm>& controlled_from_b() const {
    return from_b.form;
  }
};

/**
 * Full detection with diagnostics. Every returned form has passed the
 * reconstruction check ||U - form||_HS <= tol_reconstruct * sqrt(d_a d_b),
 * so heuristic failures can only produce false negatives.
 */
Detection detect_controlled_diagnostic(
    const BipartiteUnitary& u, Side control_side,
    const ToleranceConfig& tol = {}, std::uint64_t seed = 0);

std::optional<ControlledUnitaryForm> detect_controlled(
    const BipartiteUnitary& u, Side control_side,
    const ToleranceConfig& tol = {}, std::uint64_t seed = 0);

/** Runs detection from both sides; relocalizable iff either succeeds. */
Classification classify(
    const BipartiteUnitary& u, const ToleranceConfig& tol = {},
    std::uint64_t seed = 0);

/** The unitary a form describes. Throws MalformedFormError on bad shapes. */
ComplexMatrix reconstruct_matrix(const ControlledUnitaryForm& form);
BipartiteUnitary reconstruct(const ControlledUnitaryForm& form);
/** ||U - reconstruct(form)||_HS. */
double reconstruction_residual(
    const ControlledUnitaryForm& form, const BipartiteUnitary& u);

/**
 * Repeatedly replaces two non-orthogonal projectors by the projector onto
 * the sum of their ranges until the set is mutually orthogonal. The
 * relative order of first occurrences is preserved. Throws
 * NotProjectorError if an input is not a projector within tol.
 */
std::vector<ComplexMatrix> coarsen_projectors(
    std::span<const ComplexMatrix> projectors, double tol = 1e-9);

/** Projector onto the support of |M| = sqrt(M^dagger M). */
ComplexMatrix support_projector(const ComplexMatrix& m, double tol = 1e-9);

/** Orthonormal basis (columns) of the range of a projector. */
ComplexMatrix projector_range(const ComplexMatrix& p);

}  // namespace deloc
