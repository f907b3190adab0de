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

#include "deloc/locc.hpp"

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "deloc/errors.hpp"
#include "deloc/gates.hpp"

namespace deloc {

namespace {

bool same_matrix(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
}

bool same_optional(
    const std::optional<ComplexMatrix>& x, const std::optional<ComplexMatrix>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || same_matrix(*x, *y);
}

// Applies op to `party`'s factor of a pure state without forming op (x) I.
ComplexVector apply_local(
    const ComplexMatrix& op, Side party, const ComplexVector& psi, int d_a,
    int d_b) {
  // Column-major view: coeffs(b, a) = psi[a * d_b + b].
  Eigen::Map<const ComplexMatrix> coeffs(psi.data(), d_b, d_a);
  ComplexMatrix out = party == Side::A ? ComplexMatrix(coeffs * op.transpose())
                                       : ComplexMatrix(op * coeffs);
  return Eigen::Map<const ComplexVector>(out.data(), out.size());
}

int party_dim(Side s, int d_a, int d_b) { return s == Side::A ? d_a : d_b; }

}  // namespace

bool operator==(const Measurement& x, const Measurement& y) {
  if (x.party != y.party || x.operators.size() != y.operators.size()) return false;
  for (std::size_t i = 0; i < x.operators.size(); ++i) {
    if (!same_matrix(x.operators[i], y.operators[i])) return false;
  }
  return true;
}

bool operator==(const ProtocolNode& x, const ProtocolNode& y) {
  return x.measurement == y.measurement && x.children == y.children &&
         same_optional(x.correction_a, y.correction_a) &&
         same_optional(x.correction_b, y.correction_b);
}

bool LoccProtocol::operator==(const LoccProtocol& o) const {
  return d_a == o.d_a && d_b == o.d_b && root == o.root;
}

MeasurementCheck validate_measurement(const Measurement& m, double tol) {
  MeasurementCheck check;
  if (m.operators.empty()) {
    check.deviation = 1.0;
    check.message = "measurement has no outcomes";
    return check;
  }
  const Eigen::Index d = m.operators[0].cols();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t r = 0; r < m.operators.size(); ++r) {
    const auto& op = m.operators[r];
    if (op.rows() != d || op.cols() != d) {
      check.deviation = INFINITY;
      check.message = "operator " + std::to_string(r) + " has the wrong shape";
      return check;
    }
    total += op.adjoint() * op;
  }
  check.deviation = max_abs(total - ComplexMatrix::Identity(d, d));
  check.ok = check.deviation <= tol;
  if (!check.ok) {
    std::ostringstream oss;
    oss << "completeness violated: max|sum M^dagger M - I| = " << check.deviation;
    check.message = oss.str();
  }
  return check;
}

ProtocolNode ProtocolNode::leaf(
    std::optional<ComplexMatrix> correction_a,
    std::optional<ComplexMatrix> correction_b) {
  ProtocolNode n;
  n.correction_a = std::move(correction_a);
  n.correction_b = std::move(correction_b);
  return n;
}

ProtocolNode ProtocolNode::measure(Measurement m, std::vector<ProtocolNode> children) {
  ProtocolNode n;
  n.measurement = std::move(m);
  n.children = std::move(children);
  return n;
}

ProtocolNode ProtocolNode::measure(Measurement m) {
  std::vector<ProtocolNode> children(m.operators.size());
  return measure(std::move(m), std::move(children));
}

LoccProtocol LoccProtocol::empty(int d_a, int d_b) {
  return {d_a, d_b, ProtocolNode::leaf()};
}

namespace {

void validate_node(
    const ProtocolNode& node, int d_a, int d_b, int depth, double tol,
    const std::string& path) {
  auto fail = [&](const std::string& msg) {
    throw MalformedProtocolError("node " + path + ": " + msg);
  };
  if (node.is_leaf()) {
    if (!node.children.empty()) fail("leaf has children");
    auto check_corr = [&](const std::optional<ComplexMatrix>& c, int d, char who) {
      if (!c) return;
      if (c->rows() != d || c->cols() != d) {
        fail(std::string("correction on ") + who + " has the wrong shape");
      }
      if (unitarity_deviation(*c) > tol) {
        fail(std::string("correction on ") + who + " is not unitary");
      }
    };
    check_corr(node.correction_a, d_a, 'A');
    check_corr(node.correction_b, d_b, 'B');
    return;
  }
  if (depth + 1 > kMaxProtocolDepth) fail("protocol exceeds maximum depth");
  if (node.correction_a || node.correction_b) {
    fail("corrections are only allowed at leaves");
  }
  const Measurement& m = *node.measurement;
  const int d = party_dim(m.party, d_a, d_b);
  if (m.operators.empty()) fail("measurement has no outcomes");
  for (const auto& op : m.operators) {
    if (op.rows() != d || op.cols() != d) {
      fail(std::string("measurement operator does not act on party ") +
           to_char(m.party));
    }
  }
  const MeasurementCheck check = validate_measurement(m, tol);
  if (!check.ok) fail(check.message);
  if (node.children.size() != m.operators.size()) {
    fail("number of children differs from number of outcomes");
  }
  for (std::size_t r = 0; r < node.children.size(); ++r) {
    validate_node(
        node.children[r], d_a, d_b, depth + 1, tol, path + "/" + std::to_string(r));
  }
}

int node_depth(const ProtocolNode& node) {
  if (node.is_leaf()) return 0;
  int best = 0;
  for (const auto& c : node.children) best = std::max(best, node_depth(c));
  return best + 1;
}

}  // namespace

void LoccProtocol::validate(double tol) const {
  if (d_a < 1 || d_b < 1) {
    throw MalformedProtocolError("protocol dimensions must be positive");
  }
  validate_node(root, d_a, d_b, 0, tol, "root");
}

int LoccProtocol::depth() const { return node_depth(root); }

namespace {

struct Executor {
  int d_a;
  int d_b;
  std::vector<Branch> branches;
  double pruned = 0.0;
  std::vector<int> path;

  void run(
      const ProtocolNode& node, const ComplexVector& phi, const ComplexMatrix& acc_a,
      const ComplexMatrix& acc_b) {
    if (node.is_leaf()) {
      ComplexVector out = phi;
      ComplexMatrix ka = acc_a;
      ComplexMatrix kb = acc_b;
      if (node.correction_a) {
        out = apply_local(*node.correction_a, Side::A, out, d_a, d_b);
        ka = *node.correction_a * ka;
      }
      if (node.correction_b) {
        out = apply_local(*node.correction_b, Side::B, out, d_a, d_b);
        kb = *node.correction_b * kb;
      }
      const double prob = out.squaredNorm();
      branches.push_back(
          {path, prob, out / std::sqrt(prob), std::move(ka), std::move(kb)});
      return;
    }
    const Measurement& m = *node.measurement;
    for (std::size_t r = 0; r < m.operators.size(); ++r) {
      const ComplexVector next = apply_local(m.operators[r], m.party, phi, d_a, d_b);
      const double prob = next.squaredNorm();
      if (prob <= kBranchPruneProbability) {
        pruned += prob;
        continue;
      }
      path.push_back(static_cast<int>(r));
      if (m.party == Side::A) {
        run(node.children[r], next, m.operators[r] * acc_a, acc_b);
      } else {
        run(node.children[r], next, acc_a, m.operators[r] * acc_b);
      }
      path.pop_back();
    }
  }
};

void collect_leaves(
    const ProtocolNode& node, const ComplexMatrix& acc_a, const ComplexMatrix& acc_b,
    std::vector<int>& path, std::vector<LeafOperators>& out) {
  if (node.is_leaf()) {
    out.push_back(
        {path, node.correction_a ? ComplexMatrix(*node.correction_a * acc_a) : acc_a,
         node.correction_b ? ComplexMatrix(*node.correction_b * acc_b) : acc_b});
    return;
  }
  const Measurement& m = *node.measurement;
  for (std::size_t r = 0; r < m.operators.size(); ++r) {
    path.push_back(static_cast<int>(r));
    if (m.party == Side::A) {
      collect_leaves(node.children[r], m.operators[r] * acc_a, acc_b, path, out);
    } else {
      collect_leaves(node.children[r], acc_a, m.operators[r] * acc_b, path, out);
    }
    path.pop_back();
  }
}

void require_dims(const LoccProtocol& p, Eigen::Index n, const char* what) {
  if (n != static_cast<Eigen::Index>(p.d_a) * p.d_b) {
    throw DimensionError(std::string(what) + " does not match protocol dimensions");
  }
}

}  // namespace

std::vector<Branch> execute_protocol(const LoccProtocol& p, const ComplexVector& input) {
  p.validate();
  require_dims(p, input.size(), "input state");
  if (std::abs(input.norm() - 1.0) > 1e-9) {
    throw NormalizationError("execute_protocol: input state is not normalized");
  }
  Executor ex{p.d_a, p.d_b, {}, 0.0, {}};
  ex.run(
      p.root, input, ComplexMatrix::Identity(p.d_a, p.d_a),
      ComplexMatrix::Identity(p.d_b, p.d_b));
  if (ex.pruned > 1e-10) {
    std::ostringstream oss;
    oss << "execute_protocol: pruned probability mass " << ex.pruned
        << " exceeds 1e-10";
    throw InternalError(oss.str());
  }
  return std::move(ex.branches);
}

std::vector<LeafOperators> leaf_operators(const LoccProtocol& p) {
  p.validate();
  std::vector<LeafOperators> out;
  std::vector<int> path;
  collect_leaves(
      p.root, ComplexMatrix::Identity(p.d_a, p.d_a),
      ComplexMatrix::Identity(p.d_b, p.d_b), path, out);
  return out;
}

namespace {

double recursion_residual(
    const ProtocolNode& node, const ComplexMatrix& acc_a, const ComplexMatrix& acc_b) {
  const ComplexMatrix joint = kron(acc_a, acc_b);
  const ComplexMatrix joint_gram = joint.adjoint() * joint;
  if (node.is_leaf()) {
    const ComplexMatrix ca =
        node.correction_a ? ComplexMatrix(*node.correction_a * acc_a) : acc_a;
    const ComplexMatrix cb =
        node.correction_b ? ComplexMatrix(*node.correction_b * acc_b) : acc_b;
    const ComplexMatrix after = kron(ca, cb);
    return std::max(
        {max_abs(ca.adjoint() * ca - acc_a.adjoint() * acc_a),
         max_abs(cb.adjoint() * cb - acc_b.adjoint() * acc_b),
         max_abs(after.adjoint() * after - joint_gram)});
  }
  const Measurement& m = *node.measurement;
  const ComplexMatrix& mine = m.party == Side::A ? acc_a : acc_b;
  ComplexMatrix party_sum = ComplexMatrix::Zero(mine.rows(), mine.cols());
  ComplexMatrix joint_sum = ComplexMatrix::Zero(joint.rows(), joint.cols());
  double worst = 0.0;
  for (std::size_t r = 0; r < m.operators.size(); ++r) {
    const ComplexMatrix next = m.operators[r] * mine;
    party_sum += next.adjoint() * next;
    const ComplexMatrix na = m.party == Side::A ? next : acc_a;
    const ComplexMatrix nb = m.party == Side::B ? next : acc_b;
    const ComplexMatrix nj = kron(na, nb);
    joint_sum += nj.adjoint() * nj;
    worst = std::max(worst, recursion_residual(node.children[r], na, nb));
  }
  return std::max(
      {worst, max_abs(party_sum - mine.adjoint() * mine),
       max_abs(joint_sum - joint_gram)});
}

}  // namespace

double accumulated_recursion_residual(const LoccProtocol& p) {
  // Shapes only; completeness itself is what is being measured here.
  p.validate(INFINITY);
  return recursion_residual(
      p.root, ComplexMatrix::Identity(p.d_a, p.d_a),
      ComplexMatrix::Identity(p.d_b, p.d_b));
}

ComplexMatrix apply_channel(const LoccProtocol& p, const ComplexMatrix& rho) {
  require_dims(p, rho.rows(), "density matrix");
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix is not square");
  if (hermiticity_deviation(rho) > 1e-9) {
    throw NormalizationError("apply_channel: density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw NormalizationError("apply_channel: density matrix does not have unit trace");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& leaf : leaf_operators(p)) {
    const ComplexMatrix k = kron(leaf.accumulated_a, leaf.accumulated_b);
    out += k * rho * k.adjoint();
  }
  return out;
}

LoccProtocol synthesize_relocalization_protocol(const ControlledUnitaryForm& form) {
  form.validate();
  LoccProtocol p;
  p.d_a = form.d_a;
  p.d_b = form.d_b;
  auto undo = [&](const ComplexMatrix& v) {
    const ComplexMatrix inverse = v.adjoint();
    return form.control_side == Side::A
               ? ProtocolNode::leaf(std::nullopt, inverse)
               : ProtocolNode::leaf(inverse, std::nullopt);
  };
  if (form.blocks.size() == 1) {
    p.root = undo(form.blocks[0].target);
    return p;
  }
  Measurement m{form.control_side, {}};
  std::vector<ProtocolNode> children;
  for (const auto& blk : form.blocks) {
    m.operators.push_back(blk.projector);
    children.push_back(undo(blk.target));
  }
  p.root = ProtocolNode::measure(std::move(m), std::move(children));
  return p;
}

namespace {

struct ProductInput {
  ComplexVector a;
  ComplexVector b;
};

std::vector<ComplexVector> spanning_states(int d) {
  std::vector<ComplexVector> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) out.push_back(basis_vector(d, i));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      out.push_back(s * (basis_vector(d, i) + basis_vector(d, j)));
      out.push_back(s * (basis_vector(d, i) + kI * basis_vector(d, j)));
    }
  }
  return out;
}

RelocalizationReport evaluate_inputs(
    const BipartiteUnitary& u, const LoccProtocol& p, Side side,
    const std::vector<ProductInput>& inputs, double tol) {
  p.validate();
  if (p.d_a != u.d_a() || p.d_b != u.d_b()) {
    throw DimensionError("protocol and unitary have different dimensions");
  }
  std::vector<ComplexMatrix> krauses;
  for (const auto& leaf : leaf_operators(p)) {
    krauses.push_back(kron(leaf.accumulated_a, leaf.accumulated_b));
  }

  RelocalizationReport report;
  report.side = side;
  report.tol = tol;
  report.n_inputs = static_cast<int>(inputs.size());
  std::map<std::vector<int>, BranchFidelity> per_branch;

  for (const auto& in : inputs) {
    const ComplexVector psi = u.matrix() * kron(in.a, in.b);
    const ComplexVector& target = side == Side::A ? in.a : in.b;
    for (const Branch& br : execute_protocol(p, psi)) {
      const ComplexMatrix kept = reduced_state(br.post_state, u.d_a(), u.d_b(), side);
      const double fidelity = (target.adjoint() * kept * target)(0, 0).real();
      auto [it, inserted] = per_branch.try_emplace(br.outcomes);
      BranchFidelity& bf = it->second;
      if (inserted) bf.outcomes = br.outcomes;
      bf.min_fidelity = std::min(bf.min_fidelity, fidelity);
      bf.max_probability = std::max(bf.max_probability, br.probability);
      report.min_fidelity = std::min(report.min_fidelity, fidelity);
    }

    const ComplexMatrix rho = psi * psi.adjoint();
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& k : krauses) out += k * rho * k.adjoint();
    const ComplexMatrix restored = projector(target);
    const ComplexMatrix expected =
        side == Side::B
            ? kron(partial_trace(out, u.d_a(), u.d_b(), Side::B), restored)
            : kron(restored, partial_trace(out, u.d_a(), u.d_b(), Side::A));
    report.channel_residual = std::max(report.channel_residual, max_abs(out - expected));
  }
  for (auto& [path, bf] : per_branch) report.branches.push_back(std::move(bf));
  report.verdict = report.min_fidelity >= 1.0 - tol;
  return report;
}

}  // namespace

RelocalizationReport verify_one_piece_relocalization(
    const BipartiteUnitary& u, const LoccProtocol& p, Side side,
    const VerifyOptions& opts) {
  if (opts.n_samples < 0) throw std::invalid_argument("n_samples must be >= 0");
  std::vector<ProductInput> inputs;
  for (int s = 0; s < opts.n_samples; ++s) {
    inputs.push_back(
        {random_state(u.d_a(), derive_seed(opts.seed, 2 * s)),
         random_state(u.d_b(), derive_seed(opts.seed, 2 * s + 1))});
  }
  const auto span_a = spanning_states(u.d_a());
  const auto span_b = spanning_states(u.d_b());
  for (const auto& a : span_a) {
    for (const auto& b : span_b) inputs.push_back({a, b});
  }
  RelocalizationReport report = evaluate_inputs(u, p, side, inputs, opts.tol);
  report.n_samples = opts.n_samples;
  report.seed = opts.seed;
  return report;
}

std::vector<AccumulatedUnitarityCheck> check_bob_accumulated_unitary(
    const LoccProtocol& p, double tol) {
  std::vector<AccumulatedUnitarityCheck> out;
  for (const auto& leaf : leaf_operators(p)) {
    const ComplexMatrix kk = leaf.accumulated_b * leaf.accumulated_b.adjoint();
    const Complex scale = kk.trace() / double(p.d_b);
    const double dev =
        max_abs(kk - scale * ComplexMatrix::Identity(p.d_b, p.d_b));
    out.push_back({leaf.outcomes, dev, dev <= tol});
  }
  return out;
}

LoccProtocol fixed_input_demo_protocol() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  Measurement m{Side::A, {projector(plus), projector(minus)}};
  std::vector<ProtocolNode> children;
  children.push_back(ProtocolNode::leaf(std::nullopt, hadamard()));
  children.push_back(ProtocolNode::leaf(std::nullopt, pauli::z() * hadamard()));
  return {2, 2, ProtocolNode::measure(std::move(m), std::move(children))};
}

RelocalizationReport fixed_input_relocalization_demo(
    int n_samples, std::uint64_t seed, double tol) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2);
  plus << s, s;
  std::vector<ProductInput> inputs{{plus, basis_vector(2, 0)}, {plus, basis_vector(2, 1)}};
  for (int k = 0; k < n_samples; ++k) {
    inputs.push_back({plus, random_state(2, derive_seed(seed, k))});
  }
  RelocalizationReport report = evaluate_inputs(
      swap_phase(), fixed_input_demo_protocol(), Side::B, inputs, tol);
  report.n_samples = n_samples;
  report.seed = seed;
  return report;
}

Measurement random_measurement(
    Side party, int d, int n_outcomes, std::uint64_t seed) {
  if (n_outcomes < 1) throw std::invalid_argument("n_outcomes must be >= 1");
  const ComplexMatrix iso = random_unitary(d * n_outcomes, seed).leftCols(d);
  Measurement m{party, {}};
  for (int r = 0; r < n_outcomes; ++r) m.operators.push_back(iso.middleRows(r * d, d));
  return m;
}

namespace {

ProtocolNode random_node(
    int d_a, int d_b, int depth_left, bool force_internal, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (depth_left > 0 && (force_internal || unit(rng) < 0.6)) {
    const Side party = unit(rng) < 0.5 ? Side::A : Side::B;
    const int outcomes = 1 + static_cast<int>(rng() % 3);
    Measurement m = random_measurement(
        party, party_dim(party, d_a, d_b), outcomes, rng());
    std::vector<ProtocolNode> children;
    for (int r = 0; r < outcomes; ++r) {
      children.push_back(random_node(d_a, d_b, depth_left - 1, false, rng));
    }
    return ProtocolNode::measure(std::move(m), std::move(children));
  }
  std::optional<ComplexMatrix> ca, cb;
  if (unit(rng) < 0.5) ca = random_unitary(d_a, rng());
  if (unit(rng) < 0.5) cb = random_unitary(d_b, rng());
  return ProtocolNode::leaf(std::move(ca), std::move(cb));
}

}  // namespace

LoccProtocol random_protocol(int d_a, int d_b, int max_depth, std::uint64_t seed) {
  if (max_depth < 0 || max_depth > kMaxProtocolDepth) {
    throw std::invalid_argument("max_depth out of range");
  }
  std::mt19937_64 rng(seed);
  return {d_a, d_b, random_node(d_a, d_b, max_depth, max_depth > 0, rng)};
}

}  // namespace deloc
