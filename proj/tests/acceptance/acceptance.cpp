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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "deloc/controlled.hpp"
#include "deloc/entangling.hpp"
#include "deloc/gates.hpp"
#include "deloc/locc.hpp"
#include "deloc/schmidt.hpp"
#include "oracles.hpp"

namespace deloc {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::vector<LoccProtocol> g_side_b_protocols;

void cnot_criterion(Outcome& o) {
  const Classification c = classify(cnot());
  o.require(c.relocalizable, "not relocalizable");
  o.require(c.controlled_from_a().has_value(), "not controlled from A");
  o.require(c.controlled_from_b().has_value(), "not controlled from B");
  const SchmidtDecomposition s = operator_schmidt_decomposition(cnot());
  const double ratio = s.lambdas(2) / s.lambdas(0);
  o.require(c.osr == 2, "osr != 2");
  o.require(ratio < 1e-10, "lambda3/lambda1 too large");
  if (!c.controlled_from_a()) return;
  const LoccProtocol p = synthesize_relocalization_protocol(*c.controlled_from_a());
  const auto r = verify_one_piece_relocalization(cnot(), p, Side::B, {100, 2026, 1e-10});
  o.require(r.verdict, "synthesized protocol fails");
  double worst = 1.0;
  for (const auto& b : r.branches) worst = std::min(worst, b.min_fidelity);
  o.require(worst >= 1.0 - 1e-10, "branch fidelity below 1-1e-10");
  if (r.verdict) g_side_b_protocols.push_back(p);
  o.detail << "osr=" << c.osr << " lambda3/lambda1=" << ratio
           << " min_branch_fidelity=" << worst << " branches=" << r.branches.size();
}

void heisenberg_criterion(Outcome& o) {
  for (double alpha : {0.1, 0.3, std::numbers::pi / 5}) {
    const Classification c = classify(heisenberg(alpha));
    o.require(c.osr == 4, "osr != 4 at alpha=" + std::to_string(alpha));
    o.require(!c.controlled_from_a(), "controlled from A at alpha=" + std::to_string(alpha));
    o.require(!c.controlled_from_b(), "controlled from B at alpha=" + std::to_string(alpha));
    o.detail << "alpha=" << alpha << ": osr=" << c.osr
             << " relocalizable=" << c.relocalizable << "; ";
  }
}

void swap_phase_criterion(Outcome& o) {
  const Classification c = classify(swap_phase());
  o.require(!c.relocalizable, "swap_phase classified relocalizable");
  const auto r = fixed_input_relocalization_demo(100, 2026, 1e-10);
  o.require(r.branches.size() == 2, "expected two outcomes");
  double worst = 1.0;
  for (const auto& b : r.branches) worst = std::min(worst, b.min_fidelity);
  o.require(worst >= 1.0 - 1e-10, "demo fidelity below 1-1e-10");
  o.detail << "osr=" << c.osr << " relocalizable=" << c.relocalizable
           << " demo_min_fidelity=" << worst << " outcomes=" << r.branches.size();
}

void round_trip_criterion(Outcome& o) {
  int detected = 0, verified = 0;
  double worst_residual = 0.0, worst_fidelity = 1.0;
  for (int k = 0; k < 200; ++k) {
    const int d_a = 2 + k % 3;
    const int d_b = 2 + (k / 3) % 3;
    const int blocks = 2 + (k / 9) % (d_a - 1);
    const std::uint64_t seed = derive_seed(7, k);
    const ControlledGate g = controlled_random(d_a, d_b, blocks, seed);
    const Detection det = detect_controlled_diagnostic(g.gate, Side::A, {}, seed);
    if (!det.form) {
      o.require(false, "gate " + std::to_string(k) + " not detected: " + det.note);
      continue;
    }
    const double res = reconstruction_residual(*det.form, g.gate);
    worst_residual = std::max(worst_residual, res);
    o.require(res <= 1e-8, "residual above 1e-8 for gate " + std::to_string(k));
    ++detected;
    if (k % 10 == 0) {
      const LoccProtocol p = synthesize_relocalization_protocol(*det.form);
      const auto r = verify_one_piece_relocalization(g.gate, p, Side::B, {20, seed, 1e-9});
      worst_fidelity = std::min(worst_fidelity, r.min_fidelity);
      o.require(r.verdict, "synthesize->verify fails for gate " + std::to_string(k));
      if (r.verdict) g_side_b_protocols.push_back(p);
      ++verified;
    }
  }
  o.detail << "detected=" << detected << "/200 max_residual=" << worst_residual
           << " verified=" << verified << " min_fidelity=" << worst_fidelity;
}

void negative_control_criterion(Outcome& o) {
  int hits = 0;
  for (int d : {2, 3}) {
    for (int k = 0; k < 200; ++k) {
      const std::uint64_t seed = derive_seed(100 + d, k);
      const BipartiteUnitary u = random_bipartite(d, d, seed);
      if (detect_controlled(u, Side::A, {}, seed)) ++hits;
      if (detect_controlled(u, Side::B, {}, seed)) ++hits;
    }
  }
  o.require(hits == 0, "false detections");
  o.detail << "detections=" << hits << " over 400 gates x 2 sides";
}

void invariance_criterion(Outcome& o) {
  std::vector<std::pair<std::string, BipartiteUnitary>> gallery;
  gallery.emplace_back("cnot", cnot());
  gallery.emplace_back("swap_phase", swap_phase());
  gallery.emplace_back("swap", swap_gate(2));
  gallery.emplace_back("identity", identity_gate(2, 2));
  for (double alpha : {0.1, 0.3, std::numbers::pi / 5}) {
    gallery.emplace_back("heisenberg(" + std::to_string(alpha) + ")", heisenberg(alpha));
  }
  gallery.emplace_back("controlled_random(3,2,2)", controlled_random(3, 2, 2, 1).gate);
  gallery.emplace_back("controlled_random(3,3,3)", controlled_random(3, 3, 3, 2).gate);
  int checked = 0;
  for (const auto& [name, u] : gallery) {
    const Classification base = classify(u);
    for (int k = 0; k < 50; ++k) {
      const std::uint64_t seed = derive_seed(55, k);
      const Classification c = classify(local_sandwich(u, seed), {}, seed);
      o.require(c.osr == base.osr, name + " osr changed");
      o.require(c.relocalizable == base.relocalizable, name + " verdict changed");
      ++checked;
    }
    o.detail << name << ":osr=" << base.osr << ",reloc=" << base.relocalizable << " ";
  }
  o.detail << "sandwiches=" << checked;
}

void locc_criterion(Outcome& o) {
  double worst_rec = 0.0, worst_norm = 0.0, worst_trace = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t seed = derive_seed(77, k);
    const int d_a = 2 + k % 2, d_b = 2 + (k / 2) % 2;
    const LoccProtocol p = random_protocol(d_a, d_b, 1 + k % 4, seed);
    worst_rec = std::max(worst_rec, accumulated_recursion_residual(p));
    const ComplexVector psi = random_state(d_a * d_b, derive_seed(seed, 1));
    double total = 0.0;
    for (const auto& b : execute_protocol(p, psi)) total += b.probability;
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    const ComplexMatrix out = apply_channel(p, psi * psi.adjoint());
    worst_trace = std::max(worst_trace, std::abs(out.trace() - 1.0));
  }
  o.require(worst_rec <= 1e-9, "recursion residual above 1e-9");
  o.require(worst_norm <= 1e-9, "branch probabilities do not sum to 1");
  o.require(worst_trace <= 1e-10, "apply_channel trace deviation above 1e-10");

  int branches = 0;
  double worst_dev = 0.0;
  for (const auto& p : g_side_b_protocols) {
    for (const auto& c : check_bob_accumulated_unitary(p)) {
      ++branches;
      worst_dev = std::max(worst_dev, c.deviation);
      o.require(c.pass, "accumulated B operator not unitary");
    }
  }
  o.require(!g_side_b_protocols.empty(), "no verified side-B protocols to check");
  o.detail << "recursion=" << worst_rec << " normalization=" << worst_norm
           << " trace=" << worst_trace << " bob_checks=" << branches
           << " over " << g_side_b_protocols.size() << " protocols, max_dev=" << worst_dev;
}

void entangling_criterion(Outcome& o) {
  const OptimizationConfig cfg;
  const double e_cnot = entangling_power(cnot(), cfg).value;
  const double e_id = entangling_power(identity_gate(2, 2), cfg).value;
  const double e_swap = entangling_power(swap_gate(2), cfg).value;
  const BipartiteUnitary h = heisenberg(0.2);
  const double e_h = entangling_power(h, cfg).value;
  const double oracle = oracle::sampled_two_qubit_entangling_power(h.matrix(), 1000000, 2026);
  o.require(std::abs(e_cnot - 1.0) <= 1e-4, "cnot not 1 ebit");
  o.require(e_id <= 1e-6, "identity entangles");
  o.require(e_swap <= 1e-6, "swap entangles");
  o.require(std::abs(e_h - oracle) <= 1e-3, "heisenberg(0.2) disagrees with sampling");
  o.detail << "cnot=" << e_cnot << " identity=" << e_id << " swap=" << e_swap
           << " heisenberg(0.2)=" << e_h << " sampled=" << oracle;
}

}  // namespace
}  // namespace deloc

int main() {
  using namespace deloc;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"AC1 cnot classification and protocol", cnot_criterion},
      {"AC2 heisenberg not relocalizable", heisenberg_criterion},
      {"AC3 swap_phase and fixed-input demo", swap_phase_criterion},
      {"AC4 controlled_random round trip", round_trip_criterion},
      {"AC5 Haar negative control", negative_control_criterion},
      {"AC6 local-unitary invariance", invariance_criterion},
      {"AC7 LOCC bookkeeping", locc_criterion},
      {"AC8 entangling power", entangling_criterion},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
