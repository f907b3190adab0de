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

#include "deloc/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include "json.hpp"
#include <sstream>

#include "deloc/errors.hpp"

namespace deloc {

using nlohmann::json;

namespace {

constexpr const char* kIndexConvention = "|a>|b> -> a*d_b + b";

// Adding +0.0 turns -0.0 into 0.0 and leaves every other value unchanged.
double unsigned_zero(double x) { return x + 0.0; }

json real_rows(const ComplexMatrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(unsigned_zero(imag ? m(i, j).imag() : m(i, j).real()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_json(const ComplexMatrix& m) {
  return {{"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

json vector_json(const ComplexVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(unsigned_zero(v(i).real()));
    im.push_back(unsigned_zero(v(i).imag()));
  }
  return {{"re", re}, {"im", im}};
}

json real_vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json nullable(double v) { return v < 0.0 || !std::isfinite(v) ? json(nullptr) : json(v); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

int require_dim(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 64) {
    throw FormatError(where + ": '" + key + "' must be a positive integer");
  }
  return v.get<int>();
}

ComplexMatrix parse_matrix(const json& j, int rows, int cols, const std::string& where) {
  const json& re = require(j, "re", where);
  const json& im = require(j, "im", where);
  auto check_shape = [&](const json& part, const char* name) {
    if (!part.is_array() || static_cast<int>(part.size()) != rows) {
      throw FormatError(
          where + ": '" + name + "' must have " + std::to_string(rows) + " rows");
    }
    for (const auto& row : part) {
      if (!row.is_array() || static_cast<int>(row.size()) != cols) {
        throw FormatError(
            where + ": '" + name + "' rows must have " + std::to_string(cols) +
            " entries");
      }
      for (const auto& x : row) {
        if (!x.is_number()) throw FormatError(where + ": non-numeric entry");
      }
    }
  };
  check_shape(re, "re");
  check_shape(im, "im");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  if (!m.allFinite()) throw FormatError(where + ": non-finite entry");
  return m;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json node_json(const ProtocolNode& node) {
  json out = json::object();
  if (node.is_leaf()) {
    json corr = json::object();
    if (node.correction_a) corr["a"] = matrix_json(*node.correction_a);
    if (node.correction_b) corr["b"] = matrix_json(*node.correction_b);
    if (!corr.empty()) out["corrections"] = std::move(corr);
    return out;
  }
  out["party"] = std::string(1, to_char(node.measurement->party));
  json ops = json::array();
  for (const auto& op : node.measurement->operators) ops.push_back(matrix_json(op));
  out["operators"] = std::move(ops);
  json children = json::object();
  for (std::size_t r = 0; r < node.children.size(); ++r) {
    children[std::to_string(r)] = node_json(node.children[r]);
  }
  out["children"] = std::move(children);
  return out;
}

ProtocolNode parse_node(
    const json& j, int d_a, int d_b, int depth, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": node must be an object");
  if (depth > kMaxProtocolDepth) throw FormatError(where + ": protocol too deep");
  if (!j.contains("party")) {
    for (const auto& [key, value] : j.items()) {
      if (key != "corrections") throw FormatError(where + ": unexpected field '" + key + "'");
    }
    ProtocolNode leaf = ProtocolNode::leaf();
    if (j.contains("corrections")) {
      const json& c = j.at("corrections");
      if (!c.is_object()) throw FormatError(where + ": corrections must be an object");
      for (const auto& [key, value] : c.items()) {
        if (key == "a") {
          leaf.correction_a = parse_matrix(value, d_a, d_a, where + "/corrections/a");
        } else if (key == "b") {
          leaf.correction_b = parse_matrix(value, d_b, d_b, where + "/corrections/b");
        } else {
          throw FormatError(where + ": unknown correction '" + key + "'");
        }
      }
    }
    return leaf;
  }
  if (j.contains("corrections")) {
    throw FormatError(where + ": corrections are only allowed at leaves");
  }
  const json& party = j.at("party");
  if (!party.is_string() || (party != "A" && party != "B")) {
    throw FormatError(where + ": party must be \"A\" or \"B\"");
  }
  Measurement m{party == "A" ? Side::A : Side::B, {}};
  const int d = m.party == Side::A ? d_a : d_b;
  const json& ops = require(j, "operators", where);
  if (!ops.is_array() || ops.empty()) {
    throw FormatError(where + ": operators must be a non-empty array");
  }
  for (std::size_t r = 0; r < ops.size(); ++r) {
    m.operators.push_back(
        parse_matrix(ops[r], d, d, where + "/operators/" + std::to_string(r)));
  }
  std::vector<ProtocolNode> children(ops.size());
  if (j.contains("children")) {
    const json& ch = j.at("children");
    if (!ch.is_object()) throw FormatError(where + ": children must be an object");
    for (const auto& [key, value] : ch.items()) {
      std::size_t pos = 0;
      long label = -1;
      try {
        label = std::stol(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || label < 0 || label >= static_cast<long>(ops.size())) {
        throw FormatError(where + ": invalid outcome label '" + key + "'");
      }
      children[label] = parse_node(value, d_a, d_b, depth + 1, where + "/" + key);
    }
  }
  return ProtocolNode::measure(std::move(m), std::move(children));
}

json detection_json(const Detection& d) {
  json out{
      {"controlled", d.form.has_value()},
      {"residual", nullable(d.residual)},
      {"attempts", d.attempts},
      {"note", d.note}};
  if (d.form) {
    json blocks = json::array();
    for (const auto& b : d.form->blocks) {
      blocks.push_back(
          {{"projector", matrix_json(b.projector)}, {"target", matrix_json(b.target)}});
    }
    out["form"] = {
        {"control_side", std::string(1, to_char(d.form->control_side))},
        {"u_local", matrix_json(d.form->u_local)},
        {"blocks", std::move(blocks)}};
  }
  return out;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream oss;
  oss << std::setprecision(precision) << v;
  return oss.str();
}

std::string path_string(const std::vector<int>& outcomes) {
  if (outcomes.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(outcomes[i]);
  }
  return s + ")";
}

}  // namespace

std::string unitary_to_json(const BipartiteUnitary& u) {
  json j{
      {"d_a", u.d_a()},
      {"d_b", u.d_b()},
      {"index_convention", kIndexConvention},
      {"re", real_rows(u.matrix(), false)},
      {"im", real_rows(u.matrix(), true)}};
  return dump(j);
}

BipartiteUnitary unitary_from_json(std::string_view text, double tol_unitary) {
  const json j = parse_json(text, "unitary file");
  const std::string where = "unitary file";
  const int d_a = require_dim(j, "d_a", where);
  const int d_b = require_dim(j, "d_b", where);
  if (j.contains("index_convention") && j.at("index_convention") != kIndexConvention) {
    throw FormatError(where + ": unsupported index convention");
  }
  const ComplexMatrix m = parse_matrix(j, d_a * d_b, d_a * d_b, where);
  return {d_a, d_b, m, tol_unitary};
}

std::string protocol_to_json(const LoccProtocol& p) {
  json j{{"d_a", p.d_a}, {"d_b", p.d_b}, {"root", node_json(p.root)}};
  return dump(j);
}

LoccProtocol protocol_from_json(std::string_view text) {
  const json j = parse_json(text, "protocol file");
  const std::string where = "protocol file";
  LoccProtocol p;
  p.d_a = require_dim(j, "d_a", where);
  p.d_b = require_dim(j, "d_b", where);
  p.root = parse_node(require(j, "root", where), p.d_a, p.d_b, 0, "root");
  p.validate();
  return p;
}

std::string classification_to_json(const Classification& c) {
  json j{
      {"osr", c.osr},
      {"schmidt_coefficients", real_vector_json(c.schmidt_coefficients)},
      {"label", to_string(c.label)},
      {"relocalizable", c.relocalizable},
      {"controlled_from_a", detection_json(c.from_a)},
      {"controlled_from_b", detection_json(c.from_b)},
      {"tolerances",
       {{"tol_unitary", c.tol.tol_unitary},
        {"tol_rank", c.tol.tol_rank},
        {"tol_commute", c.tol.tol_commute},
        {"tol_reconstruct", c.tol.tol_reconstruct}}},
      {"seed", c.seed}};
  return dump(j);
}

std::string classification_to_text(const Classification& c) {
  std::ostringstream oss;
  oss << "operator Schmidt rank: " << c.osr << "\n";
  oss << "Schmidt coefficients:";
  for (Eigen::Index k = 0; k < c.schmidt_coefficients.size(); ++k) {
    oss << " " << fmt(c.schmidt_coefficients(k), 8);
  }
  oss << "\n";
  auto side_line = [&](char side, const Detection& d) {
    oss << "controlled from " << side << ": ";
    if (d.form) {
      oss << "yes (" << d.form->blocks.size() << " blocks, residual "
          << fmt(d.residual, 3) << ")\n";
    } else {
      oss << "no";
      if (!d.note.empty()) oss << " (" << d.note << ")";
      oss << "\n";
    }
  };
  side_line('A', c.from_a);
  side_line('B', c.from_b);
  oss << "class: " << to_string(c.label) << "\n";
  oss << "relocalizable: " << (c.relocalizable ? "true" : "false") << "\n";
  return oss.str();
}

std::string report_to_json(const RelocalizationReport& r) {
  json branches = json::array();
  for (const auto& b : r.branches) {
    branches.push_back(
        {{"outcomes", b.outcomes},
         {"min_fidelity", b.min_fidelity},
         {"max_probability", b.max_probability}});
  }
  json j{
      {"side", std::string(1, to_char(r.side))},
      {"verdict", r.verdict},
      {"min_fidelity", r.min_fidelity},
      {"channel_residual", r.channel_residual},
      {"tol", r.tol},
      {"n_samples", r.n_samples},
      {"n_inputs", r.n_inputs},
      {"seed", r.seed},
      {"branches", std::move(branches)}};
  return dump(j);
}

std::string report_to_text(const RelocalizationReport& r) {
  std::ostringstream oss;
  oss << "restored piece: " << to_char(r.side) << "\n";
  oss << "inputs: " << r.n_inputs << " (" << r.n_samples << " random, seed "
      << r.seed << ")\n";
  for (const auto& b : r.branches) {
    oss << "  branch " << path_string(b.outcomes) << ": min fidelity "
        << fmt(b.min_fidelity, 12) << ", max probability " << fmt(b.max_probability)
        << "\n";
  }
  oss << "min fidelity: " << fmt(r.min_fidelity, 12) << "\n";
  oss << "channel residual: " << fmt(r.channel_residual, 3) << "\n";
  oss << "relocalized: " << (r.verdict ? "true" : "false") << "\n";
  return oss.str();
}

std::string entangling_power_to_json(
    const EntanglingPowerResult& r, const OptimizationConfig& cfg) {
  json j{
      {"entangling_power_ebits", r.value},
      {"argmax_a", vector_json(r.argmax_a)},
      {"argmax_b", vector_json(r.argmax_b)},
      {"restart_values", r.restart_values},
      {"converged", r.converged},
      {"restarts", cfg.restarts},
      {"max_iters", cfg.max_iters},
      {"seed", cfg.seed}};
  return dump(j);
}

std::string entangling_power_to_text(const EntanglingPowerResult& r) {
  std::ostringstream oss;
  oss << "entangling power: " << fmt(r.value, 10) << " ebits\n";
  oss << "restarts: " << r.restart_values.size()
      << ", converged: " << (r.converged ? "true" : "false") << "\n";
  return oss.str();
}

std::string osr_to_json(const SchmidtDecomposition& s, double tol_rank) {
  json j{
      {"osr", s.rank(tol_rank)},
      {"schmidt_coefficients", real_vector_json(s.lambdas)},
      {"tol_rank", tol_rank}};
  return dump(j);
}

std::string osr_to_text(const SchmidtDecomposition& s, double tol_rank) {
  std::ostringstream oss;
  oss << "operator Schmidt rank: " << s.rank(tol_rank) << "\n";
  oss << "Schmidt coefficients:";
  for (Eigen::Index k = 0; k < s.lambdas.size(); ++k) oss << " " << fmt(s.lambdas(k), 8);
  oss << "\n";
  return oss.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw FormatError("failed writing '" + path + "'");
}

}  // namespace deloc
