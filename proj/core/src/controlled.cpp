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

#include "deloc/controlled.hpp"

#include <cmath>
#include <sstream>

#include "deloc/errors.hpp"
#include "deloc/schmidt.hpp"

namespace deloc {

const char* to_string(GateClass c) {
  switch (c) {
    case GateClass::Local:
      return "local";
    case GateClass::Controlled:
      return "controlled";
    case GateClass::NotControlled:
      return "not-controlled";
  }
  return "unknown";
}

void ControlledUnitaryForm::validate(double tol) const {
  auto fail = [](const std::string& msg) { throw MalformedFormError(msg); };
  const int dc = control_dim();
  const int dt = target_dim();
  if (d_a < 1 || d_b < 1) fail("form has non-positive dimensions");
  if (blocks.empty()) fail("form has no blocks");
  if (u_local.rows() != dc || u_local.cols() != dc) {
    fail("u_local has the wrong shape");
  }
  if (unitarity_deviation(u_local) > tol) fail("u_local is not unitary");
  ComplexMatrix total = ComplexMatrix::Zero(dc, dc);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& blk = blocks[i];
    if (blk.projector.rows() != dc || blk.projector.cols() != dc) {
      fail("block " + std::to_string(i) + " projector has the wrong shape");
    }
    if (blk.target.rows() != dt || blk.target.cols() != dt) {
      fail("block " + std::to_string(i) + " target has the wrong shape");
    }
    if (unitarity_deviation(blk.target) > tol) {
      fail("block " + std::to_string(i) + " target is not unitary");
    }
    for (std::size_t j = i; j < blocks.size(); ++j) {
      const ComplexMatrix prod = blk.projector * blocks[j].projector;
      const ComplexMatrix expected =
          i == j ? blk.projector : ComplexMatrix::Zero(dc, dc);
      if (max_abs(prod - expected) > tol) {
        fail("projectors " + std::to_string(i) + " and " + std::to_string(j) +
             " violate P_i P_j = delta_ij P_i");
      }
      if (i != j &&
          std::abs((blk.target.adjoint() * blocks[j].target).trace()) >=
              dt * (1.0 - 1e-6)) {
        fail("blocks " + std::to_string(i) + " and " + std::to_string(j) +
             " have targets equal up to phase");
      }
    }
    if (hermiticity_deviation(blk.projector) > tol) {
      fail("block " + std::to_string(i) + " projector is not Hermitian");
    }
    total += blk.projector;
  }
  if (max_abs(total - ComplexMatrix::Identity(dc, dc)) > tol) {
    fail("projectors do not sum to the identity");
  }
}

ComplexMatrix reconstruct_matrix(const ControlledUnitaryForm& form) {
  const int dc = form.control_dim();
  const int dt = form.target_dim();
  if (form.u_local.rows() != dc || form.u_local.cols() != dc) {
    throw MalformedFormError("u_local has the wrong shape");
  }
  ComplexMatrix controlled = ComplexMatrix::Zero(dc * dt, dc * dt);
  for (const auto& blk : form.blocks) {
    if (blk.projector.rows() != dc || blk.projector.cols() != dc ||
        blk.target.rows() != dt || blk.target.cols() != dt) {
      throw MalformedFormError("block has the wrong shape");
    }
    controlled += form.control_side == Side::A ? kron(blk.projector, blk.target)
                                               : kron(blk.target, blk.projector);
  }
  const ComplexMatrix local =
      form.control_side == Side::A
          ? kron(form.u_local, ComplexMatrix::Identity(dt, dt))
          : kron(ComplexMatrix::Identity(dt, dt), form.u_local);
  return controlled * local;
}

BipartiteUnitary reconstruct(const ControlledUnitaryForm& form) {
  return {form.d_a, form.d_b, reconstruct_matrix(form), 1e-9};
}

double reconstruction_residual(
    const ControlledUnitaryForm& form, const BipartiteUnitary& u) {
  if (form.d_a != u.d_a() || form.d_b != u.d_b()) {
    throw DimensionError("form and unitary have different dimensions");
  }
  return hs_norm(u.matrix() - reconstruct_matrix(form));
}

namespace {

constexpr double kNegligibleMember = 1e-12;

// Unit phase that makes the first significant entry (row-major) of v real
// and positive.
Complex canonical_phase(const ComplexMatrix& v) {
  const double cutoff = 1e-8 * max_abs(v);
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index k = 0; k < v.cols(); ++k)
      if (std::abs(v(i, k)) > cutoff) return std::conj(v(i, k)) / std::abs(v(i, k));
  return 1.0;
}

// Detection with A as the control side, on an operator of shape
// (d_a d_b) x (d_a d_b).
Detection detect_from_a(
    const ComplexMatrix& u, int d_a, int d_b, const ToleranceConfig& tol,
    std::uint64_t seed) {
  Detection result;
  const SchmidtDecomposition osd = operator_schmidt_decomposition(u, d_a, d_b);
  const int rank = osd.rank(tol.tol_rank);
  const double residual_bound = tol.tol_reconstruct * std::sqrt(double(d_a * d_b));

  auto finish = [&](ControlledUnitaryForm form) {
    form.d_a = d_a;
    form.d_b = d_b;
    form.control_side = Side::A;
    const double res = hs_norm(u - reconstruct_matrix(form));
    result.residual = res;
    if (res <= residual_bound) {
      result.form = std::move(form);
    } else {
      std::ostringstream oss;
      oss << "reconstruction residual " << res << " exceeds " << residual_bound;
      result.note = oss.str();
    }
  };

  if (rank == 1) {
    // Product operator lambda A (x) B with lambda = sqrt(d_a d_b).
    result.attempts = 1;
    ControlledUnitaryForm form;
    form.u_local = osd.a_ops[0] * std::sqrt(double(d_a));
    form.blocks.push_back(
        {ComplexMatrix::Identity(d_a, d_a),
         osd.b_ops[0] * (osd.lambdas(0) / std::sqrt(double(d_a)))});
    finish(std::move(form));
    return result;
  }

  // A_k = sum_i c_ki P_i u_local, hence A_k A_l^dagger = sum_i c_ki c*_li P_i:
  // these commute exactly when U is controlled from A.
  std::vector<ComplexMatrix> family;
  for (int k = 0; k < rank; ++k) {
    for (int l = k; l < rank; ++l) {
      const ComplexMatrix x = osd.a_ops[k] * osd.a_ops[l].adjoint();
      family.push_back(x + x.adjoint());
      if (k != l) family.push_back(kI * (x - x.adjoint()));
    }
  }
  // Members at rounding level carry no information and would make the
  // relative commutator test meaningless.
  double largest = 0.0;
  for (const auto& h : family) largest = std::max(largest, max_abs(h));
  std::erase_if(family, [&](const ComplexMatrix& h) {
    return max_abs(h) <= kNegligibleMember * largest;
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c =
          max_abs(family[i] * family[j] - family[j] * family[i]);
      const double scale = std::max(
          1e-300, max_abs(family[i]) * max_abs(family[j]));
      if (c > tol.tol_commute * scale) {
        std::ostringstream oss;
        oss << "Schmidt operators on the control side do not generate a commuting "
               "family (commutator "
            << c << ")";
        result.note = oss.str();
        return result;
      }
    }
  }

  const int d_bb = d_b * d_b;
  for (int attempt = 0; attempt < 2; ++attempt) {
    result.attempts = attempt + 1;
    ComplexMatrix basis;
    try {
      basis = joint_diagonalize(family, tol.tol_commute, derive_seed(seed, attempt));
    } catch (const NonCommutingError& e) {
      result.note = e.what();
      continue;
    }

    // Row slice (<e_m| (x) I) U reshaped to d_a x d_b^2 must have rank one:
    // it equals <f_m| (x) w_m with <f_m| = <e_m| u_local.
    std::vector<ComplexVector> rows;
    std::vector<ComplexMatrix> targets;
    bool ok = true;
    for (int m = 0; m < d_a && ok; ++m) {
      ComplexMatrix slice = ComplexMatrix::Zero(d_b, d_a * d_b);
      for (int a = 0; a < d_a; ++a) {
        slice += std::conj(basis(a, m)) * u.middleRows(a * d_b, d_b);
      }
      ComplexMatrix g(d_a, d_bb);
      for (int b = 0; b < d_b; ++b)
        for (int ap = 0; ap < d_a; ++ap)
          for (int bp = 0; bp < d_b; ++bp)
            g(ap, b * d_b + bp) = slice(b, ap * d_b + bp);
      const Svd s = svd(g);
      const double sigma2 = s.values.size() > 1 ? s.values(1) : 0.0;
      if (!(sigma2 <= tol.tol_rank * s.values(0))) {
        std::ostringstream oss;
        oss << "row slice " << m << " is not a product (sigma_2/sigma_1 = "
            << sigma2 / s.values(0) << ")";
        result.note = oss.str();
        ok = false;
        break;
      }
      rows.push_back(s.left.col(0));
      ComplexMatrix w(d_b, d_b);
      for (int b = 0; b < d_b; ++b)
        for (int bp = 0; bp < d_b; ++bp)
          w(b, bp) = s.values(0) * std::conj(s.right(b * d_b + bp, 0));
      targets.push_back(std::move(w));
    }
    if (!ok) continue;

    // Rows of u_local must be orthonormal.
    ComplexMatrix f(d_a, d_a);
    for (int m = 0; m < d_a; ++m) f.row(m) = rows[m].transpose();
    const double gram_err =
        max_abs(f.conjugate() * f.transpose() - ComplexMatrix::Identity(d_a, d_a));
    if (gram_err > tol.tol_reconstruct) {
      std::ostringstream oss;
      oss << "control-side factors are not orthonormal (error " << gram_err << ")";
      result.note = oss.str();
      continue;
    }

    // Group targets equal up to a global phase; fold the phase into f.
    std::vector<int> rep_of;  // representative index per group
    std::vector<int> group(d_a);
    for (int m = 0; m < d_a; ++m) {
      int found = -1;
      for (std::size_t g = 0; g < rep_of.size(); ++g) {
        const Complex overlap = (targets[rep_of[g]].adjoint() * targets[m]).trace();
        if (std::abs(overlap) >= d_b * (1.0 - tol.tol_reconstruct)) {
          f.row(m) *= overlap / std::abs(overlap);
          found = static_cast<int>(g);
          break;
        }
      }
      if (found < 0) {
        found = static_cast<int>(rep_of.size());
        rep_of.push_back(m);
      }
      group[m] = found;
    }

    // Canonical phase: the first significant entry of each target (row-major)
    // is real and positive; the inverse phase moves into u_local.
    std::vector<Complex> phase;
    for (int rep : rep_of) phase.push_back(canonical_phase(targets[rep]));
    for (int m = 0; m < d_a; ++m) f.row(m) /= phase[group[m]];

    ControlledUnitaryForm form;
    form.u_local = basis * f;
    for (std::size_t g = 0; g < rep_of.size(); ++g) {
      ComplexMatrix p = ComplexMatrix::Zero(d_a, d_a);
      for (int m = 0; m < d_a; ++m) {
        if (group[m] == static_cast<int>(g)) p += basis.col(m) * basis.col(m).adjoint();
      }
      form.blocks.push_back({std::move(p), phase[g] * targets[rep_of[g]]});
    }
    finish(std::move(form));
    if (result.form) return result;
  }
  return result;
}

ControlledUnitaryForm mirror_to_b(ControlledUnitaryForm form) {
  std::swap(form.d_a, form.d_b);
  form.control_side = Side::B;
  return form;
}

}  // namespace

Detection detect_controlled_diagnostic(
    const BipartiteUnitary& u, Side control_side, const ToleranceConfig& tol,
    std::uint64_t seed) {
  tol.validate();
  if (control_side == Side::A) {
    return detect_from_a(u.matrix(), u.d_a(), u.d_b(), tol, seed);
  }
  // Conjugate by SWAP so that B becomes the first factor.
  const ComplexMatrix s = swap_operator(u.d_a(), u.d_b());
  Detection d = detect_from_a(s * u.matrix() * s.adjoint(), u.d_b(), u.d_a(), tol, seed);
  if (d.form) d.form = mirror_to_b(std::move(*d.form));
  return d;
}

std::optional<ControlledUnitaryForm> detect_controlled(
    const BipartiteUnitary& u, Side control_side, const ToleranceConfig& tol,
    std::uint64_t seed) {
  return detect_controlled_diagnostic(u, control_side, tol, seed).form;
}

Classification classify(
    const BipartiteUnitary& u, const ToleranceConfig& tol, std::uint64_t seed) {
  tol.validate();
  Classification c;
  c.tol = tol;
  c.seed = seed;
  const SchmidtDecomposition osd = operator_schmidt_decomposition(u);
  c.schmidt_coefficients = osd.lambdas;
  c.osr = osd.rank(tol.tol_rank);
  c.from_a = detect_controlled_diagnostic(u, Side::A, tol, derive_seed(seed, 0));
  c.from_b = detect_controlled_diagnostic(u, Side::B, tol, derive_seed(seed, 1));
  c.relocalizable = c.from_a.form.has_value() || c.from_b.form.has_value();
  if (c.osr == 1) {
    c.label = GateClass::Local;
  } else {
    c.label = c.relocalizable ? GateClass::Controlled : GateClass::NotControlled;
  }
  return c;
}

namespace {

void require_projector(const ComplexMatrix& p, double tol, std::size_t index) {
  if (p.rows() != p.cols() || max_abs(p - p.adjoint()) > tol ||
      max_abs(p * p - p) > tol) {
    throw NotProjectorError(
        "input " + std::to_string(index) + " is not a projector");
  }
}

}  // namespace

ComplexMatrix projector_range(const ComplexMatrix& p) {
  const HermitianEigen eig = hermitian_eig(0.5 * (p + p.adjoint()), 1.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.5) keep.push_back(k);
  }
  ComplexMatrix out(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(j) = eig.vectors.col(keep[j]);
  return out;
}

std::vector<ComplexMatrix> coarsen_projectors(
    std::span<const ComplexMatrix> projectors, double tol) {
  std::vector<ComplexMatrix> set;
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    require_projector(projectors[i], tol, i);
    if (i > 0 && projectors[i].rows() != projectors[0].rows()) {
      throw DimensionError("coarsen_projectors: projectors differ in dimension");
    }
    set.push_back(projectors[i]);
  }

  // Each merge removes one element, so at most n - 1 merges happen.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < set.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < set.size() && !merged; ++j) {
        if (max_abs(set[i] * set[j]) <= tol) continue;
        const ComplexMatrix ri = projector_range(set[i]);
        const ComplexMatrix rj = projector_range(set[j]);
        ComplexMatrix stacked(ri.rows(), ri.cols() + rj.cols());
        stacked << ri, rj;
        const Svd s = svd(stacked);
        Eigen::Index r = 0;
        while (r < s.values.size() && s.values(r) > tol) ++r;
        const ComplexMatrix q = s.left.leftCols(r);
        set[i] = q * q.adjoint();
        set.erase(set.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  return set;
}

ComplexMatrix support_projector(const ComplexMatrix& m, double tol) {
  const HermitianEigen eig = hermitian_eig(m.adjoint() * m, 1e-8);
  const double top = eig.values.size() ? eig.values.maxCoeff() : 0.0;
  ComplexMatrix p = ComplexMatrix::Zero(m.cols(), m.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > tol * std::max(top, 1.0)) {
      p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    }
  }
  return p;
}

}  // namespace deloc
