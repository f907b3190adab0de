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

#include "deloc/gates.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "deloc/errors.hpp"

namespace deloc {

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

BipartiteUnitary cnot() {
  const ComplexMatrix p0 = projector(basis_vector(2, 0));
  const ComplexMatrix p1 = projector(basis_vector(2, 1));
  return {2, 2, kron(p0, pauli::identity()) + kron(p1, pauli::x())};
}

BipartiteUnitary swap_phase() {
  auto ket_bra = [](int i, int j) {
    return ComplexMatrix(basis_vector(2, i) * basis_vector(2, j).adjoint());
  };
  const ComplexMatrix u = kron(ket_bra(0, 0), ket_bra(0, 0)) +
                          kron(ket_bra(0, 1), ket_bra(1, 0)) +
                          kron(ket_bra(1, 0), ket_bra(0, 1)) -
                          kron(ket_bra(1, 1), ket_bra(1, 1));
  return {2, 2, u};
}

BipartiteUnitary swap_gate(int d) { return {d, d, swap_operator(d, d)}; }

BipartiteUnitary heisenberg(double alpha) {
  const ComplexMatrix generator = kron(pauli::x(), pauli::x()) +
                                  kron(pauli::y(), pauli::y()) +
                                  kron(pauli::z(), pauli::z());
  return {2, 2, expm_i_hermitian(generator, alpha)};
}

BipartiteUnitary identity_gate(int d_a, int d_b) {
  return {d_a, d_b, ComplexMatrix::Identity(d_a * d_b, d_a * d_b)};
}

BipartiteUnitary random_local(int d_a, int d_b, std::uint64_t seed) {
  return {
      d_a, d_b,
      kron(random_unitary(d_a, derive_seed(seed, 0)),
           random_unitary(d_b, derive_seed(seed, 1)))};
}

BipartiteUnitary local_sandwich(const BipartiteUnitary& u, std::uint64_t seed) {
  const ComplexMatrix left = random_local(u.d_a(), u.d_b(), derive_seed(seed, 0)).matrix();
  const ComplexMatrix right = random_local(u.d_a(), u.d_b(), derive_seed(seed, 1)).matrix();
  return {u.d_a(), u.d_b(), left * u.matrix() * right};
}

BipartiteUnitary random_bipartite(int d_a, int d_b, std::uint64_t seed) {
  return {d_a, d_b, random_unitary(d_a * d_b, seed)};
}

ControlledGate controlled_random(
    int d_a, int d_b, int n_blocks, std::uint64_t seed) {
  if (d_a < 1 || d_b < 1) {
    throw DimensionError("controlled_random: dimensions must be positive");
  }
  if (n_blocks < 1 || n_blocks > d_a) {
    throw MalformedFormError(
        "controlled_random: need 1 <= n_blocks <= d_a");
  }
  const ComplexMatrix basis = random_unitary(d_a, derive_seed(seed, 0));

  // Random composition of d_a into n_blocks positive parts.
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::vector<int> cuts(d_a - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(n_blocks - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(d_a);

  ControlledUnitaryForm form;
  form.control_side = Side::A;
  form.d_a = d_a;
  form.d_b = d_b;
  form.u_local = random_unitary(d_a, derive_seed(seed, 2));
  for (int i = 0; i < n_blocks; ++i) {
    const ComplexMatrix cols = basis.middleCols(cuts[i], cuts[i + 1] - cuts[i]);
    form.blocks.push_back(
        {cols * cols.adjoint(), random_unitary(d_b, derive_seed(seed, 10 + i))});
  }
  form.validate();
  return {reconstruct(form), std::move(form)};
}

BipartiteUnitary build_gate(std::string_view name, const GateParams& params) {
  if (name == "cnot") return cnot();
  if (name == "swap_phase") return swap_phase();
  if (name == "swap") return swap_gate(params.d_a);
  if (name == "identity") return identity_gate(params.d_a, params.d_b);
  if (name == "heisenberg") return heisenberg(params.alpha);
  if (name == "controlled_random") {
    return controlled_random(params.d_a, params.d_b, params.n_blocks, params.seed)
        .gate;
  }
  throw UnknownGateError("unknown gate '" + std::string(name) + "'");
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{
      "cnot", "swap_phase", "swap", "identity", "heisenberg",
      "controlled_random"};
  return names;
}

}  // namespace deloc
