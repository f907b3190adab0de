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
 * Dense complex linear algebra for bipartite systems of desk-scale
 * dimension (composite dimension up to a few dozen).
 *
 * Composite index convention: the basis vector |a>|b> of H_A (x) H_B has
 * index a * d_b + b. Every routine in the library (kron, partial_trace,
 * reshuffle, the file formats) uses this convention.
 */

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace deloc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/** Which tensor factor an operation refers to. */
enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
inline char to_char(Side s) { return s == Side::A ? 'A' : 'B'; }

/**
 * Numerical tolerances used throughout detection and verification.
 *
 * The defaults leave two orders of magnitude between consecutive stages so
 * that noise accumulated in an earlier stage cannot flip a later verdict.
 */
struct ToleranceConfig {
  double tol_unitary = 1e-10;
  double tol_rank = 1e-7;  // relative to the largest Schmidt coefficient
  double tol_commute = 1e-8;
  double tol_reconstruct = 1e-8;

  /** Throws std::invalid_argument unless every field lies in (0, 1). */
  void validate() const;
};

/**
 * A unitary on C^{d_a} (x) C^{d_b}. Construction checks unitarity to
 * tol_unitary; instances are immutable.
 */
class BipartiteUnitary {
 public:
  BipartiteUnitary(
      int d_a, int d_b, ComplexMatrix matrix, double tol_unitary = 1e-10);

  int d_a() const { return d_a_; }
  int d_b() const { return d_b_; }
  int dim() const { return d_a_ * d_b_; }
  int dim(Side s) const { return s == Side::A ? d_a_ : d_b_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  int d_a_;
  int d_b_;
  ComplexMatrix matrix_;
};

/** Result of a Hermitian eigendecomposition; eigenvalues ascending. */
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;  // columns
};

/** Thin SVD: m = left * diag(values) * right^dagger, values descending. */
struct Svd {
  ComplexMatrix left;
  RealVector values;
  ComplexMatrix right;
};

// --- norms and predicates ---------------------------------------------------

double max_abs(const ComplexMatrix& m);
double hs_norm(const ComplexMatrix& m);
/** max |(U^dagger U - I)_{ij}|; throws DimensionError for non-square input. */
double unitarity_deviation(const ComplexMatrix& u);
double hermiticity_deviation(const ComplexMatrix& h);
bool is_unitary(const ComplexMatrix& u, double tol);

// --- tensor structure ---------------------------------------------------------

/** Kronecker product under the A-major composite index convention. */
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/** Traces out `traced` from a (d_a d_b) x (d_a d_b) operator. */
ComplexMatrix partial_trace(
    const ComplexMatrix& rho, int d_a, int d_b, Side traced);

/**
 * Realignment R[a d_a + a', b d_b + b'] = U[(a,b), (a',b')]. Product
 * operators map to rank-one matrices, so the SVD of R is the operator
 * Schmidt decomposition.
 */
ComplexMatrix reshuffle(const ComplexMatrix& u, int d_a, int d_b);
ComplexMatrix reshuffle(const BipartiteUnitary& u);
/** Inverse of reshuffle. */
ComplexMatrix unreshuffle(const ComplexMatrix& r, int d_a, int d_b);

/** Permutation |a>|b> -> |b>|a> from C^{d_a} (x) C^{d_b} to C^{d_b} (x) C^{d_a}. */
ComplexMatrix swap_operator(int d_a, int d_b);

/** Reduced density matrix on `keep` of a pure bipartite state. */
ComplexMatrix reduced_state(
    const ComplexVector& psi, int d_a, int d_b, Side keep);

// --- decompositions -----------------------------------------------------------

/** Throws NotHermitianError if the input deviates from Hermitian by more than tol. */
HermitianEigen hermitian_eig(const ComplexMatrix& h, double tol = 1e-10);

Svd svd(const ComplexMatrix& m);

/** exp(i t H) for Hermitian H, through its eigendecomposition. */
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t);

/**
 * Orthonormal basis (columns) jointly diagonalizing a commuting Hermitian
 * family.
 *
 * Works by recursive eigenspace splitting: a random real combination of the
 * family restricted to the current subspace is diagonalized, the subspace
 * is split wherever consecutive eigenvalues differ by more than 1e-8 of the
 * combination's norm, and each cluster is refined again with fresh weights.
 * A final sweep checks that every member is diagonal to 10 * tol_commute
 * (relative to its scale). Members whose scale is below 1e-12 of the largest
 * are treated as zero.
 *
 * Throws NonCommutingError if a pairwise commutator exceeds tol_commute
 * times the product of the operands' scales, or if the final sweep fails.
 */
ComplexMatrix joint_diagonalize(
    std::span<const ComplexMatrix> family, double tol_commute,
    std::uint64_t seed = 0);

// --- random instances -----------------------------------------------------------

/** Deterministic seed derivation for independent sub-streams. */
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/** Haar-random d x d unitary: QR of a complex Ginibre matrix with phase fix. */
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/** Haar-random unit vector in C^d. */
ComplexVector random_state(int d, std::uint64_t seed);

/** Random Hermitian matrix with Gaussian entries (GUE-like). */
ComplexMatrix random_hermitian(int d, std::uint64_t seed);

/** Complex Ginibre matrix with standard normal real and imaginary parts. */
ComplexMatrix random_ginibre(int rows, int cols, std::uint64_t seed);

/** Computational basis vector |k> in C^d. */
ComplexVector basis_vector(int d, int k);

/** Projector |v><v| / <v|v>. */
ComplexMatrix projector(const ComplexVector& v);

}  // namespace deloc
