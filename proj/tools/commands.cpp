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

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <ostream>

#include "deloc/controlled.hpp"
#include "deloc/entangling.hpp"
#include "deloc/errors.hpp"
#include "deloc/gates.hpp"
#include "deloc/io.hpp"
#include "deloc/locc.hpp"
#include "deloc/schmidt.hpp"

namespace deloc::cli {

namespace {

Side parse_side(const std::string& s) { return s == "A" ? Side::A : Side::B; }

struct ClassifyArgs {
  std::string path;
  double tol = ToleranceConfig{}.tol_reconstruct;
  std::uint64_t seed = 0;
  std::string format = "text";
};

struct SynthesizeArgs {
  std::string path;
  std::string side = "A";
  std::string out;
  double tol = ToleranceConfig{}.tol_reconstruct;
  std::uint64_t seed = 0;
};

struct SimulateArgs {
  std::string unitary_path;
  std::string protocol_path;
  std::string side = "B";
  int samples = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "text";
};

struct EntanglingArgs {
  std::string path;
  int restarts = OptimizationConfig{}.restarts;
  int iters = OptimizationConfig{}.max_iters;
  std::uint64_t seed = 0;
  std::string format = "text";
};

struct OsrArgs {
  std::string path;
  double tol = ToleranceConfig{}.tol_rank;
  std::string format = "text";
};

struct GalleryArgs {
  std::string name;
  GateParams params;
  std::string out;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const BipartiteUnitary u = unitary_from_json(read_text_file(a.path));
  ToleranceConfig tol;
  tol.tol_reconstruct = a.tol;
  const Classification c = classify(u, tol, a.seed);
  out << (a.format == "json" ? classification_to_json(c) : classification_to_text(c));
  return kOk;
}

int cmd_synthesize(const SynthesizeArgs& a, std::ostream& out, std::ostream& err) {
  const BipartiteUnitary u = unitary_from_json(read_text_file(a.path));
  ToleranceConfig tol;
  tol.tol_reconstruct = a.tol;
  const Side control = parse_side(a.side);
  const auto form = detect_controlled(u, control, tol, a.seed);
  if (!form) {
    err << "error: not a local unitary equivalent of a controlled-unitary "
           "operation with control side "
        << a.side << "\n";
    return kInputError;
  }
  const LoccProtocol p = synthesize_relocalization_protocol(*form);
  const RelocalizationReport check =
      verify_one_piece_relocalization(u, p, other(control), {20, a.seed, 1e-9});
  if (!check.verdict) {
    err << "internal error: synthesized protocol failed verification (min "
           "fidelity "
        << check.min_fidelity << ")\n";
    return kInternalError;
  }
  emit(out, a.out, protocol_to_json(p));
  if (!a.out.empty()) {
    out << "wrote " << form->blocks.size() << "-outcome protocol to " << a.out
        << " (restores " << to_char(other(control)) << ", min fidelity "
        << check.min_fidelity << ")\n";
  }
  return kOk;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const BipartiteUnitary u = unitary_from_json(read_text_file(a.unitary_path));
  const LoccProtocol p = protocol_from_json(read_text_file(a.protocol_path));
  if (p.d_a != u.d_a() || p.d_b != u.d_b()) {
    throw DimensionError("protocol and unitary have different dimensions");
  }
  const RelocalizationReport r =
      verify_one_piece_relocalization(u, p, parse_side(a.side), {a.samples, a.seed, a.tol});
  out << (a.format == "json" ? report_to_json(r) : report_to_text(r));
  return kOk;
}

int cmd_entangling(const EntanglingArgs& a, std::ostream& out) {
  const BipartiteUnitary u = unitary_from_json(read_text_file(a.path));
  OptimizationConfig cfg;
  cfg.restarts = a.restarts;
  cfg.max_iters = a.iters;
  cfg.seed = a.seed;
  const EntanglingPowerResult r = entangling_power(u, cfg);
  out << (a.format == "json" ? entangling_power_to_json(r, cfg)
                             : entangling_power_to_text(r));
  return kOk;
}

int cmd_osr(const OsrArgs& a, std::ostream& out) {
  const BipartiteUnitary u = unitary_from_json(read_text_file(a.path));
  const SchmidtDecomposition s = operator_schmidt_decomposition(u);
  out << (a.format == "json" ? osr_to_json(s, a.tol) : osr_to_text(s, a.tol));
  return kOk;
}

int cmd_gallery(const GalleryArgs& a, std::ostream& out) {
  if (a.name.empty()) {
    for (const auto& n : gallery_names()) out << n << "\n";
    return kOk;
  }
  emit(out, a.out, unitary_to_json(build_gate(a.name, a.params)));
  return kOk;
}

// Maps library exceptions onto the exit-code contract.
int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const NotUnitaryError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const DelocError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify bipartite unitaries by their delocalization power"};
  app.name("deloc");
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"text", "json"});
  const auto sides = CLI::IsMember({"A", "B"});

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand(
      "classify", "Operator Schmidt rank and controlled-unitary detection");
  classify_cmd->add_option("path", classify_args.path, "Unitary file")->required();
  classify_cmd->add_option("--tol", classify_args.tol, "Reconstruction tolerance")
      ->check(CLI::Range(1e-300, 1.0));
  classify_cmd->add_option("--seed", classify_args.seed, "Seed for randomized steps");
  classify_cmd->add_option("--format", classify_args.format)->check(formats);

  SynthesizeArgs synth_args;
  auto* synth_cmd = app.add_subcommand(
      "synthesize", "Write the one-way relocalization protocol of a controlled gate");
  synth_cmd->add_option("path", synth_args.path, "Unitary file")->required();
  synth_cmd->add_option("--side", synth_args.side, "Control side (the measuring party)")
      ->check(sides);
  synth_cmd->add_option("--out", synth_args.out, "Protocol file to write (default stdout)");
  synth_cmd->add_option("--tol", synth_args.tol, "Reconstruction tolerance")
      ->check(CLI::Range(1e-300, 1.0));
  synth_cmd->add_option("--seed", synth_args.seed);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Check whether a protocol relocalizes one piece after a gate");
  sim_cmd->add_option("unitary", sim_args.unitary_path, "Unitary file")->required();
  sim_cmd->add_option("protocol", sim_args.protocol_path, "Protocol file")->required();
  sim_cmd->add_option("--side", sim_args.side, "Piece that should be restored")
      ->check(sides);
  sim_cmd->add_option("--samples", sim_args.samples, "Random product inputs")
      ->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--seed", sim_args.seed);
  sim_cmd->add_option("--tol", sim_args.tol, "Fidelity tolerance")
      ->check(CLI::Range(1e-300, 1.0));
  sim_cmd->add_option("--format", sim_args.format)->check(formats);

  EntanglingArgs ep_args;
  auto* ep_cmd = app.add_subcommand(
      "entangling-power", "Maximal output entanglement over product inputs");
  ep_cmd->add_option("path", ep_args.path, "Unitary file")->required();
  ep_cmd->add_option("--restarts", ep_args.restarts)->check(CLI::PositiveNumber);
  ep_cmd->add_option("--iters", ep_args.iters)->check(CLI::NonNegativeNumber);
  ep_cmd->add_option("--seed", ep_args.seed);
  ep_cmd->add_option("--format", ep_args.format)->check(formats);

  OsrArgs osr_args;
  auto* osr_cmd = app.add_subcommand("osr", "Operator Schmidt rank");
  osr_cmd->add_option("path", osr_args.path, "Unitary file")->required();
  osr_cmd->add_option("--tol", osr_args.tol, "Relative rank tolerance")
      ->check(CLI::Range(1e-300, 1.0));
  osr_cmd->add_option("--format", osr_args.format)->check(formats);

  GalleryArgs gal_args;
  auto* gal_cmd = app.add_subcommand(
      "gallery", "Emit a named gate as a unitary file (no name: list gates)");
  gal_cmd->add_option("name", gal_args.name)->check(CLI::IsMember(gallery_names()));
  gal_cmd->add_option("--alpha", gal_args.params.alpha, "heisenberg coupling");
  gal_cmd->add_option("--da", gal_args.params.d_a)->check(CLI::Range(1, 8));
  gal_cmd->add_option("--db", gal_args.params.d_b)->check(CLI::Range(1, 8));
  gal_cmd->add_option("--blocks", gal_args.params.n_blocks)->check(CLI::Range(1, 8));
  gal_cmd->add_option("--seed", gal_args.params.seed);
  gal_cmd->add_option("--out", gal_args.out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (*classify_cmd) return guarded([&] { return cmd_classify(classify_args, out); }, err);
  if (*synth_cmd) {
    return guarded([&] { return cmd_synthesize(synth_args, out, err); }, err);
  }
  if (*sim_cmd) return guarded([&] { return cmd_simulate(sim_args, out); }, err);
  if (*ep_cmd) return guarded([&] { return cmd_entangling(ep_args, out); }, err);
  if (*osr_cmd) return guarded([&] { return cmd_osr(osr_args, out); }, err);
  if (*gal_cmd) return guarded([&] { return cmd_gallery(gal_args, out); }, err);
  return kInternalError;
}

}  // namespace deloc::cli
