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

#include "deloc/schmidt.hpp"

#include <sstream>

#include "deloc/errors.hpp"

namespace deloc {

int SchmidtDecomposition::rank(double tol_rank) const {
  if (lambdas.size() == 0 || lambdas(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    if (lambdas(k) > tol_rank * lambdas(0)) ++r;
  }
  return r;
}

ComplexMatrix SchmidtDecomposition::reconstruct(int terms) const {
  const int n = d_a * d_b;
  const int count = terms < 0 ? static_cast<int>(lambdas.size())
                              : std::min<int>(terms, lambdas.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < count; ++k) {
    out += lambdas(k) * kron(a_ops[k], b_ops[k]);
  }
  return out;
}

SchmidtDecomposition operator_schmidt_decomposition(
    const ComplexMatrix& op, int d_a, int d_b) {
  const Svd s = svd(reshuffle(op, d_a, d_b));
  SchmidtDecomposition out;
  out.d_a = d_a;
  out.d_b = d_b;
  out.lambdas = s.values;
  const Eigen::Index terms = s.values.size();
  for (Eigen::Index k = 0; k < terms; ++k) {
    // R = sum_k s_k x_k y_k^dagger, so A_k = reshape(x_k), B_k = reshape(conj(y_k)).
    ComplexMatrix a(d_a, d_a);
    ComplexMatrix b(d_b, d_b);
    for (int i = 0; i < d_a; ++i)
      for (int j = 0; j < d_a; ++j) a(i, j) = s.left(i * d_a + j, k);
    for (int i = 0; i < d_b; ++i)
      for (int j = 0; j < d_b; ++j) b(i, j) = std::conj(s.right(i * d_b + j, k));
    out.a_ops.push_back(std::move(a));
    out.b_ops.push_back(std::move(b));
  }
  const double err = max_abs(out.reconstruct() - op);
  if (err > 1e-9 * std::max(1.0, max_abs(op))) {
    std::ostringstream oss;
    oss << "operator Schmidt decomposition does not reconstruct its input "
           "(error "
        << err << ")";
    throw InternalError(oss.str());
  }
  return out;
}

SchmidtDecomposition operator_schmidt_decomposition(const BipartiteUnitary& u) {
  return operator_schmidt_decomposition(u.matrix(), u.d_a(), u.d_b());
}

int operator_schmidt_rank(const BipartiteUnitary& u, double tol_rank) {
  return operator_schmidt_decomposition(u).rank(tol_rank);
}

}  // namespace deloc
