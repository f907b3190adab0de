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
 * Multi-turn LOCC protocols on two-qudit pure states.
 *
 * A protocol is a finite tree. Each internal node is a generalized
 * measurement by one party whose choice may depend on every earlier outcome;
 * each outcome leads to a child. Leaves may carry final local unitary
 * corrections. The classical message is the full outcome path, so a
 * correction at a leaf may depend on all outcomes.
 *
 * Along a path R = (r_1, ..., r_N) the accumulated operators are the
 * ordered products M^(R) = M^(r_N|R_{N-1}) ... M^(r_1) on A and K^(R)
 * likewise on B, with identity on the idle party's turns and leaf
 * corrections treated as a final single-outcome turn. The protocol's
 * channel is rho -> sum_R (M^(R) (x) K^(R)) rho (M^(R) (x) K^(R))^dagger.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deloc/controlled.hpp"
#include "deloc/linalg.hpp"

namespace deloc {

inline constexpr int kMaxProtocolDepth = 16;
/** Branches at or below this probability are dropped during execution. */
inline constexpr double kBranchPruneProbability = 1e-12;

/** Generalized measurement {M^(r)}; outcome labels are 0..n-1. */
struct Measurement {
  Side party = Side::A;
  std::vector<ComplexMatrix> operators;
};

struct MeasurementCheck {
  bool ok = false;
  double deviation = 0.0;  // max |sum_r M^dagger M - I|
  std::string message;
};

/** Completeness sum_r M^(r)^dagger M^(r) = I. */
MeasurementCheck validate_measurement(const Measurement& m, double tol = 1e-9);

struct ProtocolNode {
  std::optional<Measurement> measurement;  // empty at a leaf
  std::vector<ProtocolNode> children;      // one per outcome
  std::optional<ComplexMatrix> correction_a;
  std::optional<ComplexMatrix> correction_b;

  bool is_leaf() const { return !measurement.has_value(); }

  static ProtocolNode leaf(
      std::optional<ComplexMatrix> correction_a = std::nullopt,
      std::optional<ComplexMatrix> correction_b = std::nullopt);
  static ProtocolNode measure(Measurement m, std::vector<ProtocolNode> children);
  /** Measurement whose every outcome ends in a bare leaf. */
  static ProtocolNode measure(Measurement m);
};

struct LoccProtocol {
  int d_a = 0;
  int d_b = 0;
  ProtocolNode root;

  /** Protocol that does nothing. */
  static LoccProtocol empty(int d_a, int d_b);

  /**
   * Throws MalformedProtocolError on shape mismatches, incomplete
   * measurements, non-unitary corrections, corrections on internal nodes, a
   * child count different from the outcome count, or depth above
   * kMaxProtocolDepth.
   */
  void validate(double tol = 1e-9) const;

  /** Number of measurement turns on the longest path. */
  int depth() const;

  bool operator==(const LoccProtocol&) const;
};

bool operator==(const Measurement&, const Measurement&);
bool operator==(const ProtocolNode&, const ProtocolNode&);

struct Branch {
  std::vector<int> outcomes;
  double probability = 0.0;
  ComplexVector post_state;  // normalized
  ComplexMatrix accumulated_a;
  ComplexMatrix accumulated_b;
};

/**
 * Runs the protocol on a normalized pure state. Branches are listed in
 * depth-first outcome order; branches with probability at most
 * kBranchPruneProbability are dropped.
 */
std::vector<Branch> execute_protocol(
    const LoccProtocol& p, const ComplexVector& input);

/** Accumulated operators of every leaf path, independent of any input. */
struct LeafOperators {
  std::vector<int> outcomes;
  ComplexMatrix accumulated_a;
  ComplexMatrix accumulated_b;
};
std::vector<LeafOperators> leaf_operators(const LoccProtocol& p);

/**
 * Largest violation of sum_{r_k} M^(R_k)^dagger M^(R_k) =
 * M^(R_{k-1})^dagger M^(R_{k-1}) (and the same for K) over every node of
 * the tree, leaf corrections included.
 */
double accumulated_recursion_residual(const LoccProtocol& p);

/** The protocol's CPTP map applied to a density matrix. */
ComplexMatrix apply_channel(const LoccProtocol& p, const ComplexMatrix& rho);

/**
 * One-turn, one-way protocol for a controlled form: the control party
 * measures {P_i} and the target party undoes v_i. A single-block form
 * gives a deterministic correction with no measurement.
 */
LoccProtocol synthesize_relocalization_protocol(const ControlledUnitaryForm& form);

struct BranchFidelity {
  std::vector<int> outcomes;
  double min_fidelity = 1.0;
  double max_probability = 0.0;
};

/**
 * `side` names the piece that is supposed to be restored. The verdict holds
 * iff min_fidelity >= 1 - tol over every input and every branch with
 * probability above kBranchPruneProbability.
 */
struct RelocalizationReport {
  Side side = Side::B;
  std::vector<BranchFidelity> branches;
  double min_fidelity = 1.0;
  /** max over inputs of ||Lambda(rho) - (kept part) (x) |psi><psi|||_max. */
  double channel_residual = 0.0;
  bool verdict = false;
  int n_samples = 0;
  int n_inputs = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
};

struct VerifyOptions {
  int n_samples = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

/**
 * Checks one-piece relocalization of `side`'s piece on Haar-random product
 * inputs plus a spanning set of product inputs built from |i>,
 * (|i>+|j>)/sqrt2 and (|i>+i|j>)/sqrt2 on each side. By linearity of the
 * channel the spanning set makes the check conclusive up to tolerance.
 */
RelocalizationReport verify_one_piece_relocalization(
    const BipartiteUnitary& u, const LoccProtocol& p, Side side,
    const VerifyOptions& opts = {});

struct AccumulatedUnitarityCheck {
  std::vector<int> outcomes;
  double deviation = 0.0;  // ||K K^dagger - Tr(K K^dagger)/d I||_max
  bool pass = false;
};

/**
 * Necessary condition for restoring B's piece: every leaf's accumulated
 * operator on B is proportional to a unitary.
 */
std::vector<AccumulatedUnitarityCheck> check_bob_accumulated_unitary(
    const LoccProtocol& p, double tol = 1e-9);

/**
 * swap_phase with A's input fixed to |+>: A measures {|+><+|, |-><-|} and B
 * applies H or sigma_z H. Restores B's piece for inputs |0>, |1> and
 * n_samples Haar-random states, even though swap_phase is not controlled.
 */
RelocalizationReport fixed_input_relocalization_demo(
    int n_samples = 100, std::uint64_t seed = 0, double tol = 1e-10);

/** The protocol used by fixed_input_relocalization_demo. */
LoccProtocol fixed_input_demo_protocol();

// --- random instances for testing and benchmarking ---------------------------

/** n-outcome measurement from a Haar isometry C^d -> C^{n d}. */
Measurement random_measurement(Side party, int d, int n_outcomes, std::uint64_t seed);

/** Random tree of depth up to max_depth with random leaf corrections. */
LoccProtocol random_protocol(int d_a, int d_b, int max_depth, std::uint64_t seed);

}  // namespace deloc
