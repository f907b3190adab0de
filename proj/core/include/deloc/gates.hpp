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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "deloc/controlled.hpp"
#include "deloc/linalg.hpp"

namespace deloc {

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/** Hadamard |0><+| + |1><-|. */
ComplexMatrix hadamard();

/** |0><0| (x) I + |1><1| (x) sigma_x. */
BipartiteUnitary cnot();

/**
 * |00><00| + |01><10| + |10><01| - |11><11|, i.e. SWAP composed with a
 * controlled-Z. Not locally equivalent to any controlled-unitary gate.
 */
BipartiteUnitary swap_phase();

/** Plain SWAP on C^d (x) C^d. */
BipartiteUnitary swap_gate(int d = 2);

/** exp(i alpha sum_j sigma^j (x) sigma^j), j = x, y, z. */
BipartiteUnitary heisenberg(double alpha);

BipartiteUnitary identity_gate(int d_a, int d_b);

/** u_a (x) u_b with Haar-random factors. */
BipartiteUnitary random_local(int d_a, int d_b, std::uint64_t seed);

/** (a (x) b) U (c (x) d) with Haar-random local factors. */
BipartiteUnitary local_sandwich(const BipartiteUnitary& u, std::uint64_t seed);

/** Haar-random unitary on C^{d_a} (x) C^{d_b}. */
BipartiteUnitary random_bipartite(int d_a, int d_b, std::uint64_t seed);

struct ControlledGate {
  BipartiteUnitary gate;
  ControlledUnitaryForm form;
};

/**
 * Random controlled-unitary gate controlled from A: a Haar basis of H_A is
 * split into `n_blocks` non-empty groups giving the projectors, each block
 * gets a Haar-random target unitary, and a Haar-random u_local is applied
 * first. Requires 1 <= n_blocks <= d_a.
 */
ControlledGate controlled_random(
    int d_a, int d_b, int n_blocks, std::uint64_t seed);

struct GateParams {
  double alpha = 0.0;
  int d_a = 2;
  int d_b = 2;
  int n_blocks = 2;
  std::uint64_t seed = 0;
};

/**
 * Named gallery gate: "cnot", "swap_phase", "swap", "identity",
 * "heisenberg" (uses alpha) or "controlled_random" (uses d_a, d_b,
 * n_blocks, seed). Throws UnknownGateError for other names.
 */
BipartiteUnitary build_gate(std::string_view name, const GateParams& params = {});

const std::vector<std::string>& gallery_names();

}  // namespace deloc
