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
#include <vector>

#include "deloc/linalg.hpp"

namespace deloc {

/** Eigenvalues of the reduced state below this are treated as zero. */
inline constexpr double kEntropyEigenFloor = 1e-15;

/**
 * Von Neumann entropy in ebits (base 2) of the reduced state on `keep`.
 * Throws NormalizationError if |psi| deviates from 1 by more than 1e-9.
 */
double entanglement_entropy(
    const ComplexVector& psi, int d_a, int d_b, Side keep = Side::A);

/**
 * Multistart (1+1) hill climbing over product inputs. Each restart draws
 * from its own seed, derived from `seed` and the restart index, so results
 * for k restarts are a prefix of those for k + 1.
 */
struct OptimizationConfig {
  int restarts = 32;
  int max_iters = 2000;
  double initial_step = 0.5;
  double grow = 1.5;    // step multiplier after an improvement
  double shrink = 0.9;  // after a rejected proposal
  double tol = 1e-9;    // converged once the step falls below this
  std::uint64_t seed = 0;

  void validate() const;
};

struct EntanglingPowerResult {
  double value = 0.0;  // ebits, recomputed from the argmax states
  ComplexVector argmax_a;
  ComplexVector argmax_b;
  std::vector<double> restart_values;
  bool converged = false;  // the winning restart reached the step floor
};

/**
 * Lower bound on max over product inputs of the output entanglement
 * entropy. Ties between restarts go to the lowest index.
 */
EntanglingPowerResult entangling_power(
    const BipartiteUnitary& u, const OptimizationConfig& cfg = {});

}  // namespace deloc
