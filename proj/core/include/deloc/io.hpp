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
 * File formats and report rendering.
 *
 * Unitary file (JSON):
 *
 *     {"d_a": 2, "d_b": 2,
 *      "index_convention": "|a>|b> -> a*d_b + b",
 *      "re": [[...], ...], "im": [[...], ...]}
 *
 * `re` and `im` are the row-major real and imaginary parts of the
 * (d_a d_b) x (d_a d_b) matrix; row and column (a, b) has index a*d_b + b.
 *
 * Protocol file (JSON): {"d_a": .., "d_b": .., "root": NODE} where NODE is
 * either a measurement
 *
 *     {"party": "A"|"B", "operators": [{"re": .., "im": ..}, ...],
 *      "children": {"0": NODE, "1": NODE, ...}}
 *
 * or a leaf {"corrections": {"a": MATRIX, "b": MATRIX}} with both
 * corrections optional. A missing child is a bare leaf.
 *
 * Reports are emitted as JSON with two-space indentation; doubles use the
 * shortest representation that parses back to the same value.
 */

#include <string>
#include <string_view>

#include "deloc/controlled.hpp"
#include "deloc/entangling.hpp"
#include "deloc/locc.hpp"
#include "deloc/schmidt.hpp"

namespace deloc {

std::string unitary_to_json(const BipartiteUnitary& u);
/** Throws FormatError on schema violations and NotUnitaryError on bad matrices. */
BipartiteUnitary unitary_from_json(std::string_view text, double tol_unitary = 1e-10);

std::string protocol_to_json(const LoccProtocol& p);
/** Throws FormatError or MalformedProtocolError. */
LoccProtocol protocol_from_json(std::string_view text);

std::string classification_to_json(const Classification& c);
std::string classification_to_text(const Classification& c);

std::string report_to_json(const RelocalizationReport& r);
std::string report_to_text(const RelocalizationReport& r);

std::string entangling_power_to_json(
    const EntanglingPowerResult& r, const OptimizationConfig& cfg);
std::string entangling_power_to_text(const EntanglingPowerResult& r);

std::string osr_to_json(const SchmidtDecomposition& s, double tol_rank);
std::string osr_to_text(const SchmidtDecomposition& s, double tol_rank);

/** Reads a whole file; throws FormatError if it cannot be opened. */
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace deloc
