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

#include <catch_amalgamated.hpp>

#include <random>

#include "deloc/errors.hpp"
#include "deloc/gates.hpp"
#include "deloc/linalg.hpp"
#include "oracles.hpp"

namespace deloc {
namespace {

using Catch::Matchers::WithinAbs;

ComplexMatrix diag(std::initializer_list<double> values) {
  RealVector v(values.size());
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("kron follows the A-major index convention", "[linalg]") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(i2, i2) - ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_abs(kron(diag({1, 2}), i2) - diag({1, 1, 2, 2})) == 0.0);

  // sigma_x (x) sigma_x maps |00> (index 0) to |11> (index 3).
  const ComplexVector out = kron(pauli::x(), pauli::x()) * basis_vector(4, 0);
  CHECK(max_abs(out - basis_vector(4, 3)) == 0.0);

  const ComplexMatrix a = random_ginibre(2, 3, 1);
  const ComplexMatrix b = random_ginibre(3, 2, 2);
  CHECK(max_abs(kron(a, b) - oracle::kron_by_index(a, b)) == 0.0);
}

TEST_CASE("kron is associative and satisfies the mixed-product rule", "[linalg]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d1 = 2 + seed % 2, d2 = 3 - seed % 2;
    const ComplexMatrix a = random_ginibre(d1, d1, derive_seed(seed, 0));
    const ComplexMatrix b = random_ginibre(d2, d2, derive_seed(seed, 1));
    const ComplexMatrix c = random_ginibre(d1, d1, derive_seed(seed, 2));
    const ComplexMatrix d = random_ginibre(d2, d2, derive_seed(seed, 3));
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <= 1e-12);
    CHECK(max_abs(kron(a, b) * kron(c, d) - kron(ComplexMatrix(a * c), ComplexMatrix(b * d))) <= 1e-12);
  }
}

TEST_CASE("partial_trace", "[linalg]") {
  SECTION("product state") {
    const ComplexMatrix rho = random_hermitian(2, 3);
    const ComplexMatrix sigma = random_hermitian(3, 4);
    const ComplexMatrix tr_b = partial_trace(kron(rho, sigma), 2, 3, Side::B);
    CHECK(max_abs(tr_b - rho * sigma.trace()) <= 1e-12);
    const ComplexMatrix tr_a = partial_trace(kron(rho, sigma), 2, 3, Side::A);
    CHECK(max_abs(tr_a - sigma * rho.trace()) <= 1e-12);
  }
  SECTION("maximally entangled state") {
    ComplexVector phi = ComplexVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix r = partial_trace(phi * phi.adjoint(), 2, 2, Side::B);
    CHECK(max_abs(r - 0.5 * ComplexMatrix::Identity(2, 2)) <= 1e-15);
    CHECK(max_abs(reduced_state(phi, 2, 2, Side::A) - r) <= 1e-15);
  }
  SECTION("maximally mixed") {
    const ComplexMatrix r =
        partial_trace(0.25 * ComplexMatrix::Identity(4, 4), 2, 2, Side::A);
    CHECK(max_abs(r - 0.5 * ComplexMatrix::Identity(2, 2)) <= 1e-15);
  }
  SECTION("trace and hermiticity are preserved") {
    const ComplexMatrix h = random_hermitian(6, 9);
    for (Side s : {Side::A, Side::B}) {
      const ComplexMatrix r = partial_trace(h, 2, 3, s);
      CHECK(std::abs(r.trace() - h.trace()) <= 1e-12);
      CHECK(hermiticity_deviation(r) <= 1e-12);
    }
  }
  SECTION("reduced_state agrees with partial_trace") {
    const ComplexVector psi = random_state(6, 17);
    const ComplexMatrix rho = psi * psi.adjoint();
    CHECK(max_abs(reduced_state(psi, 2, 3, Side::A) - partial_trace(rho, 2, 3, Side::B)) <=
          1e-14);
    CHECK(max_abs(reduced_state(psi, 2, 3, Side::B) - partial_trace(rho, 2, 3, Side::A)) <=
          1e-14);
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(
        partial_trace(ComplexMatrix::Identity(5, 5), 2, 3, Side::A), DimensionError);
  }
}

TEST_CASE("reshuffle", "[linalg]") {
  SECTION("product operators realign to rank one") {
    const ComplexMatrix a = random_ginibre(2, 2, 5);
    const ComplexMatrix b = random_ginibre(3, 3, 6);
    const ComplexMatrix r = reshuffle(kron(a, b), 2, 3);
    CHECK(r.rows() == 4);
    CHECK(r.cols() == 9);
    CHECK(oracle::rank_by_elimination(r, 1e-12) == 1);
    // Outer product of the row-major flattenings.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 9; ++j)
        CHECK(std::abs(r(i, j) - a(i / 2, i % 2) * b(j / 3, j % 3)) <= 1e-14);
  }
  SECTION("CNOT realigns to singular values (sqrt2, sqrt2, 0, 0)") {
    // |0><0| (x) I + |1><1| (x) X: two HS-orthogonal product terms of norm
    // 1 * sqrt2, so the realigned matrix has exactly two singular values sqrt2.
    const Svd s = svd(reshuffle(cnot()));
    REQUIRE(s.values.size() == 4);
    CHECK_THAT(s.values(0), WithinAbs(std::sqrt(2.0), 1e-14));
    CHECK_THAT(s.values(1), WithinAbs(std::sqrt(2.0), 1e-14));
    CHECK(s.values(2) <= 1e-14);
    CHECK(s.values(3) <= 1e-14);
  }
  SECTION("squared singular values sum to d_a d_b for unitaries") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const BipartiteUnitary u = random_bipartite(2 + seed % 3, 2 + seed % 2, seed);
      CHECK_THAT(svd(reshuffle(u)).values.squaredNorm(), WithinAbs(u.dim(), 1e-10));
    }
  }
  SECTION("unreshuffle inverts reshuffle exactly") {
    const ComplexMatrix u = random_ginibre(12, 12, 3);
    CHECK(unreshuffle(reshuffle(u, 3, 4), 3, 4) == u);
    CHECK(unreshuffle(reshuffle(u, 4, 3), 4, 3) == u);
  }
}

TEST_CASE("hermitian_eig", "[linalg]") {
  SECTION("diagonal input") {
    const HermitianEigen e = hermitian_eig(diag({3, 1, 2}));
    CHECK_THAT(e.values(0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(e.values(1), WithinAbs(2.0, 1e-15));
    CHECK_THAT(e.values(2), WithinAbs(3.0, 1e-15));
    // Permutation basis up to phases.
    CHECK_THAT(std::abs(e.vectors(1, 0)), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(e.vectors(2, 1)), WithinAbs(1.0, 1e-15));
    CHECK_THAT(std::abs(e.vectors(0, 2)), WithinAbs(1.0, 1e-15));
  }
  SECTION("sigma_x") {
    const HermitianEigen e = hermitian_eig(pauli::x());
    CHECK_THAT(e.values(0), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(e.values(1), WithinAbs(1.0, 1e-15));
    // |-> and |+> up to phase.
    CHECK_THAT(std::abs(e.vectors(0, 0) + e.vectors(1, 0)), WithinAbs(0.0, 1e-15));
    CHECK_THAT(std::abs(e.vectors(0, 1) - e.vectors(1, 1)), WithinAbs(0.0, 1e-15));
  }
  SECTION("reconstruction on random Hermitian matrices up to size 16") {
    for (int d = 1; d <= 16; ++d) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ComplexMatrix h = random_hermitian(d, derive_seed(seed, d));
        const HermitianEigen e = hermitian_eig(h);
        const double scale = max_abs(h);
        REQUIRE(max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() *
                            e.vectors.adjoint() -
                        h) <= 1e-9 * scale);
        REQUIRE(unitarity_deviation(e.vectors) <= 1e-10);
        for (Eigen::Index k = 0; k + 1 < e.values.size(); ++k) {
          REQUIRE(e.values(k) <= e.values(k + 1));
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          REQUIRE((h * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() <=
                  1e-9 * h.norm());
        }
      }
    }
  }
  SECTION("non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eig(random_ginibre(3, 3, 1)), NotHermitianError);
  }
}

TEST_CASE("svd", "[linalg]") {
  SECTION("identity") {
    const Svd s = svd(ComplexMatrix::Identity(5, 5));
    CHECK(max_abs(s.values.cast<Complex>() - ComplexVector::Ones(5)) <= 1e-15);
  }
  SECTION("rank-one outer product") {
    const ComplexVector x = random_ginibre(4, 1, 1).col(0);
    const ComplexVector y = random_ginibre(3, 1, 2).col(0);
    const Svd s = svd(x * y.adjoint());
    CHECK_THAT(s.values(0), WithinAbs(x.norm() * y.norm(), 1e-12));
    for (Eigen::Index k = 1; k < s.values.size(); ++k) CHECK(s.values(k) <= 1e-12);
  }
  SECTION("reconstruction on random matrices up to size 16") {
    for (int d = 1; d <= 16; ++d) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ComplexMatrix m = random_ginibre(d, d, derive_seed(seed, 100 + d));
        const Svd s = svd(m);
        REQUIRE(max_abs(s.left * s.values.cast<Complex>().asDiagonal() *
                            s.right.adjoint() -
                        m) <= 1e-9 * std::max(1.0, max_abs(m)));
        REQUIRE(unitarity_deviation(s.left) <= 1e-10);
        REQUIRE(unitarity_deviation(s.right) <= 1e-10);
        for (Eigen::Index k = 0; k + 1 < s.values.size(); ++k) {
          REQUIRE(s.values(k) >= s.values(k + 1));
        }
      }
    }
  }
}

TEST_CASE("joint_diagonalize", "[linalg]") {
  auto offdiag = [](const ComplexMatrix& basis, const ComplexMatrix& h) {
    ComplexMatrix d = basis.adjoint() * h * basis;
    d.diagonal().setZero();
    return max_abs(d);
  };
  const double tol = 1e-8;

  SECTION("diagonal family gives the standard basis up to permutation and phase") {
    const std::vector<ComplexMatrix> fam{diag({1, 2, 3}), diag({0, 5, 5})};
    const ComplexMatrix b = joint_diagonalize(fam, tol, 1);
    CHECK(unitarity_deviation(b) <= 1e-12);
    for (int c = 0; c < 3; ++c) CHECK_THAT(b.col(c).cwiseAbs().maxCoeff(), WithinAbs(1.0, 1e-12));
  }
  SECTION("the identity family accepts any basis") {
    const std::vector<ComplexMatrix> fam{ComplexMatrix::Identity(4, 4)};
    const ComplexMatrix b = joint_diagonalize(fam, tol, 2);
    CHECK(unitarity_deviation(b) <= 1e-12);
    CHECK(offdiag(b, fam[0]) <= 10 * tol);
  }
  SECTION("recovers a conjugated eigenbasis") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ComplexMatrix v = random_unitary(4, seed);
      const std::vector<ComplexMatrix> fam{
          v * diag({0.1, 0.7, -0.4, 1.3}) * v.adjoint(),
          v * diag({1.0, -1.0, 2.0, 0.5}) * v.adjoint()};
      const ComplexMatrix b = joint_diagonalize(fam, tol, seed);
      // Each recovered column matches one column of V up to phase.
      const ComplexMatrix overlap = v.adjoint() * b;
      for (int c = 0; c < 4; ++c) {
        CHECK_THAT(overlap.col(c).cwiseAbs().maxCoeff(), WithinAbs(1.0, 1e-9));
      }
    }
  }
  SECTION("degenerate members are split by the other members") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ComplexMatrix v = random_unitary(4, seed + 50);
      const std::vector<ComplexMatrix> fam{
          v * diag({1, 1, 0, 0}) * v.adjoint(), v * diag({0, 1, 1, 0}) * v.adjoint()};
      const ComplexMatrix b = joint_diagonalize(fam, tol, seed);
      const ComplexMatrix overlap = v.adjoint() * b;
      for (int c = 0; c < 4; ++c) {
        CHECK_THAT(overlap.col(c).cwiseAbs().maxCoeff(), WithinAbs(1.0, 1e-9));
      }
    }
  }
  SECTION("postcondition on 100 commuting families with degeneracies") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int d = 2 + seed % 5;
      const ComplexMatrix v = random_unitary(d, derive_seed(seed, 1));
      std::mt19937_64 rng(seed);
      std::vector<ComplexMatrix> fam;
      for (int m = 0; m < 3; ++m) {
        RealVector ev(d);
        // Few distinct values so that every member is degenerate.
        for (int k = 0; k < d; ++k) ev(k) = static_cast<double>(rng() % 3);
        fam.push_back(v * ev.cast<Complex>().asDiagonal() * v.adjoint());
      }
      const ComplexMatrix b = joint_diagonalize(fam, tol, seed);
      REQUIRE(unitarity_deviation(b) <= 1e-10);
      for (const auto& h : fam) REQUIRE(offdiag(b, h) <= 10 * tol * std::max(1.0, max_abs(h)));
    }
  }
  SECTION("non-commuting family is reported") {
    const std::vector<ComplexMatrix> fam{pauli::x(), pauli::z()};
    CHECK_THROWS_AS(joint_diagonalize(fam, tol, 0), NonCommutingError);
  }
}

TEST_CASE("random_unitary", "[linalg]") {
  for (int d = 1; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CHECK(unitarity_deviation(random_unitary(d, seed)) <= 1e-12);
    }
  }
  CHECK(random_unitary(3, 42) == random_unitary(3, 42));
  CHECK(random_unitary(3, 42) != random_unitary(3, 43));

  // Haar first moment: E|U_00|^2 = 1/d.
  double mean = 0.0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) mean += std::norm(random_unitary(2, s)(0, 0));
  mean /= n;
  CHECK_THAT(mean, WithinAbs(0.5, 0.02));

  // Second moment E|U_00|^4 = 2 / (d (d + 1)) = 1/3 for d = 2.
  double m4 = 0.0;
  for (int s = 0; s < n; ++s) m4 += std::pow(std::norm(random_unitary(2, s)(0, 0)), 2);
  CHECK_THAT(m4 / n, WithinAbs(1.0 / 3.0, 0.02));
}

TEST_CASE("BipartiteUnitary validation", "[linalg]") {
  CHECK_NOTHROW(BipartiteUnitary(2, 3, random_unitary(6, 1)));
  CHECK_THROWS_AS(BipartiteUnitary(2, 2, random_unitary(6, 1)), DimensionError);
  try {
    BipartiteUnitary(2, 2, 2.0 * ComplexMatrix::Identity(4, 4));
    FAIL("expected NotUnitaryError");
  } catch (const NotUnitaryError& e) {
    CHECK_THAT(e.deviation(), WithinAbs(3.0, 1e-15));
  }
}

TEST_CASE("ToleranceConfig validation", "[linalg]") {
  CHECK_NOTHROW(ToleranceConfig{}.validate());
  ToleranceConfig bad;
  bad.tol_rank = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.tol_commute = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("expm_i_hermitian", "[linalg]") {
  CHECK(max_abs(expm_i_hermitian(pauli::z(), 0.0) - ComplexMatrix::Identity(2, 2)) <= 1e-15);
  // exp(i t Z) = diag(e^{it}, e^{-it}).
  const ComplexMatrix e = expm_i_hermitian(pauli::z(), 0.3);
  CHECK(std::abs(e(0, 0) - std::exp(Complex(0, 0.3))) <= 1e-15);
  CHECK(std::abs(e(1, 1) - std::exp(Complex(0, -0.3))) <= 1e-15);
}

}  // namespace deloc
