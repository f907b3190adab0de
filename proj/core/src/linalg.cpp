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

#include "deloc/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "deloc/errors.hpp"

namespace deloc {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument(
          std::string("tolerance ") + name + " must lie in (0, 1)");
    }
  };
  check(tol_unitary, "tol_unitary");
  check(tol_rank, "tol_rank");
  check(tol_commute, "tol_commute");
  check(tol_reconstruct, "tol_reconstruct");
}

BipartiteUnitary::BipartiteUnitary(
    int d_a, int d_b, ComplexMatrix matrix, double tol_unitary)
    : d_a_(d_a), d_b_(d_b), matrix_(std::move(matrix)) {
  if (d_a < 1 || d_b < 1) {
    throw DimensionError("local dimensions must be positive");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(d_a) * d_b;
  if (matrix_.rows() != n || matrix_.cols() != n) {
    std::ostringstream oss;
    oss << "matrix is " << matrix_.rows() << "x" << matrix_.cols()
        << ", expected " << n << "x" << n;
    throw DimensionError(oss.str());
  }
  if (!matrix_.allFinite()) {
    throw NotUnitaryError("matrix has non-finite entries", INFINITY);
  }
  const double dev = unitarity_deviation(matrix_);
  if (dev > tol_unitary) {
    std::ostringstream oss;
    oss << "matrix is not unitary: max|U^dagger U - I| = " << dev;
    throw NotUnitaryError(oss.str(), dev);
  }
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw DimensionError("unitarity check needs a square matrix");
  }
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

double hermiticity_deviation(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("hermiticity check needs a square matrix");
  }
  return max_abs(h - h.adjoint());
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  return u.rows() == u.cols() && unitarity_deviation(u) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(
    const ComplexMatrix& rho, int d_a, int d_b, Side traced) {
  const Eigen::Index n = static_cast<Eigen::Index>(d_a) * d_b;
  if (d_a < 1 || d_b < 1 || rho.rows() != n || rho.cols() != n) {
    std::ostringstream oss;
    oss << "partial_trace: operator is " << rho.rows() << "x" << rho.cols()
        << " but d_a * d_b = " << n;
    throw DimensionError(oss.str());
  }
  if (traced == Side::B) {
    ComplexMatrix out = ComplexMatrix::Zero(d_a, d_a);
    for (int a = 0; a < d_a; ++a)
      for (int ap = 0; ap < d_a; ++ap)
        for (int b = 0; b < d_b; ++b) out(a, ap) += rho(a * d_b + b, ap * d_b + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_b, d_b);
  for (int b = 0; b < d_b; ++b)
    for (int bp = 0; bp < d_b; ++bp)
      for (int a = 0; a < d_a; ++a) out(b, bp) += rho(a * d_b + b, a * d_b + bp);
  return out;
}

ComplexMatrix reshuffle(const ComplexMatrix& u, int d_a, int d_b) {
  const Eigen::Index n = static_cast<Eigen::Index>(d_a) * d_b;
  if (u.rows() != n || u.cols() != n) {
    throw DimensionError("reshuffle: operator size does not match d_a * d_b");
  }
  ComplexMatrix r(d_a * d_a, d_b * d_b);
  for (int a = 0; a < d_a; ++a)
    for (int ap = 0; ap < d_a; ++ap)
      for (int b = 0; b < d_b; ++b)
        for (int bp = 0; bp < d_b; ++bp)
          r(a * d_a + ap, b * d_b + bp) = u(a * d_b + b, ap * d_b + bp);
  return r;
}

ComplexMatrix reshuffle(const BipartiteUnitary& u) {
  return reshuffle(u.matrix(), u.d_a(), u.d_b());
}

ComplexMatrix unreshuffle(const ComplexMatrix& r, int d_a, int d_b) {
  if (r.rows() != d_a * d_a || r.cols() != d_b * d_b) {
    throw DimensionError("unreshuffle: realigned matrix has the wrong shape");
  }
  ComplexMatrix u(d_a * d_b, d_a * d_b);
  for (int a = 0; a < d_a; ++a)
    for (int ap = 0; ap < d_a; ++ap)
      for (int b = 0; b < d_b; ++b)
        for (int bp = 0; bp < d_b; ++bp)
          u(a * d_b + b, ap * d_b + bp) = r(a * d_a + ap, b * d_b + bp);
  return u;
}

ComplexMatrix swap_operator(int d_a, int d_b) {
  const int n = d_a * d_b;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < d_a; ++a)
    for (int b = 0; b < d_b; ++b) s(b * d_a + a, a * d_b + b) = 1.0;
  return s;
}

ComplexMatrix reduced_state(
    const ComplexVector& psi, int d_a, int d_b, Side keep) {
  if (psi.size() != static_cast<Eigen::Index>(d_a) * d_b) {
    throw DimensionError("reduced_state: vector size does not match d_a * d_b");
  }
  // Row-major reshape: coeffs(a, b) = psi[a * d_b + b].
  ComplexMatrix coeffs(d_a, d_b);
  for (int a = 0; a < d_a; ++a)
    for (int b = 0; b < d_b; ++b) coeffs(a, b) = psi(a * d_b + b);
  if (keep == Side::A) return coeffs * coeffs.adjoint();
  return coeffs.transpose() * coeffs.conjugate();
}

HermitianEigen hermitian_eig(const ComplexMatrix& h, double tol) {
  const double dev = hermiticity_deviation(h);
  if (dev > tol * std::max(1.0, max_abs(h))) {
    std::ostringstream oss;
    oss << "hermitian_eig: input is not Hermitian (max|H - H^dagger| = " << dev
        << ")";
    throw NotHermitianError(oss.str());
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw InternalError("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Svd svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double t) {
  const HermitianEigen eig = hermitian_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(kI * (t * eig.values(k)));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

namespace {

double relative_scale(const ComplexMatrix& m) { return max_abs(m); }

struct JointDiagonalizer {
  std::span<const ComplexMatrix> family;
  std::vector<double> scales;
  std::mt19937_64 rng;

  ComplexMatrix split(const ComplexMatrix& basis) {
    const Eigen::Index k = basis.cols();
    if (k <= 1) return basis;
    std::normal_distribution<double> normal;
    for (int attempt = 0; attempt < 3; ++attempt) {
      ComplexMatrix combo = ComplexMatrix::Zero(k, k);
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (scales[i] == 0.0) continue;
        combo += (normal(rng) / scales[i]) *
                 (basis.adjoint() * family[i] * basis);
      }
      combo = 0.5 * (combo + combo.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(combo);
      const RealVector& vals = solver.eigenvalues();
      const double gap_tol = 1e-8 * std::max(vals.cwiseAbs().maxCoeff(), 1e-300);

      std::vector<Eigen::Index> starts{0};
      for (Eigen::Index j = 1; j < k; ++j) {
        if (vals(j) - vals(j - 1) > gap_tol) starts.push_back(j);
      }
      if (starts.size() == 1) continue;  // degenerate draw or scalar block
      starts.push_back(k);

      ComplexMatrix rotated = basis * solver.eigenvectors();
      ComplexMatrix out(basis.rows(), k);
      for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
        const Eigen::Index lo = starts[c];
        const Eigen::Index width = starts[c + 1] - lo;
        out.middleCols(lo, width) = split(rotated.middleCols(lo, width));
      }
      return out;
    }
    // Every member is scalar on this subspace: any orthonormal basis works.
    return basis;
  }
};

}  // namespace

ComplexMatrix joint_diagonalize(
    std::span<const ComplexMatrix> family, double tol_commute,
    std::uint64_t seed) {
  if (family.empty()) {
    throw DimensionError("joint_diagonalize: empty family");
  }
  const Eigen::Index n = family[0].rows();
  std::vector<double> scales;
  scales.reserve(family.size());
  for (const auto& h : family) {
    if (h.rows() != n || h.cols() != n) {
      throw DimensionError("joint_diagonalize: members differ in shape");
    }
    const double s = relative_scale(h);
    if (hermiticity_deviation(h) > tol_commute * std::max(s, 1e-300)) {
      throw NotHermitianError("joint_diagonalize: member is not Hermitian");
    }
    scales.push_back(s);
  }
  const double largest = *std::max_element(scales.begin(), scales.end());
  for (auto& s : scales) {
    if (s <= 1e-12 * largest) s = 0.0;
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (scales[i] == 0.0 || scales[j] == 0.0) continue;
      const double c =
          max_abs(family[i] * family[j] - family[j] * family[i]);
      if (c > tol_commute * scales[i] * scales[j]) {
        std::ostringstream oss;
        oss << "joint_diagonalize: members " << i << " and " << j
            << " do not commute (max|[H_i, H_j]| = " << c << ")";
        throw NonCommutingError(oss.str(), c);
      }
    }
  }

  JointDiagonalizer jd{family, scales, std::mt19937_64(seed)};
  ComplexMatrix basis = jd.split(ComplexMatrix::Identity(n, n));

  for (std::size_t i = 0; i < family.size(); ++i) {
    ComplexMatrix d = basis.adjoint() * family[i] * basis;
    d.diagonal().setZero();
    const double off = max_abs(d);
    if (off > 10.0 * tol_commute * std::max(scales[i], 1e-300) &&
        scales[i] > 0.0) {
      std::ostringstream oss;
      oss << "joint_diagonalize: member " << i
          << " not diagonalized (max off-diagonal " << off << ")";
      throw NonCommutingError(oss.str(), off);
    }
  }
  return basis;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_ginibre(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix z(rows, cols);
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  return z;
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_unitary: d must be positive");
  const ComplexMatrix z = random_ginibre(d, d, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0);
  }
  return q;
}

ComplexVector random_state(int d, std::uint64_t seed) {
  if (d < 1) throw DimensionError("random_state: d must be positive");
  ComplexVector v = random_ginibre(d, 1, seed).col(0);
  return v / v.norm();
}

ComplexMatrix random_hermitian(int d, std::uint64_t seed) {
  const ComplexMatrix g = random_ginibre(d, d, seed);
  return 0.5 * (g + g.adjoint());
}

ComplexVector basis_vector(int d, int k) {
  if (k < 0 || k >= d) throw DimensionError("basis_vector: index out of range");
  ComplexVector v = ComplexVector::Zero(d);
  v(k) = 1.0;
  return v;
}

ComplexMatrix projector(const ComplexVector& v) {
  return v * v.adjoint() / v.squaredNorm();
}

}  // namespace deloc
