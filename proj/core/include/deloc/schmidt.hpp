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

#include <vector>

#include "deloc/linalg.hpp"

namespace deloc {

/**
 * Operator Schmidt decomposition U = sum_k lambda_k A_k (x) B_k with
 * Hilbert-Schmidt orthonormal A_k, B_k and lambda descending. All
 * min(d_a^2, d_b^2) terms are kept, including numerically vanishing ones.
 */
struct SchmidtDecomposition {
  int d_a = 0;
  int d_b = 0;
  RealVector lambdas;
  std::vector<ComplexMatrix> a_ops;
  std::vector<ComplexMatrix> b_ops;

  /** Number of lambda_k > tol_rank * lambda_1. */
  int rank(double tol_rank) const;

  /** sum over the first `terms` terms (all when terms < 0). */
  ComplexMatrix reconstruct(int terms = -1) const;
};

/**
 * SVD of the realigned operator. Throws InternalError if the resulting
 * terms do not reproduce the input to 1e-9.
 */
SchmidtDecomposition operator_schmidt_decomposition(
    const ComplexMatrix& op, int d_a, int d_b);
SchmidtDecomposition operator_schmidt_decomposition(const BipartiteUnitary& u);

int operator_schmidt_rank(const BipartiteUnitary& u, double tol_rank = 1e-7);

}  // namespace deloc
