// Copyright 2026 The semiphi Authors
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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiphi/paulsen.hpp"

namespace semiphi::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

// Complex scalars are [re, im] pairs; matrices are row-major nested arrays
// of them.  Every reader throws ValidationError naming the JSON path of the
// offending value.

Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const BlockAlgebra& a);
Json to_json(const ConcreteModule& e);
Json to_json(const CPMap& phi);
Json to_json(const ModuleMap& map);
Json to_json(const ToleranceProfile& tol);
Json to_json(const PaulsenSystem& s);
Json to_json(const SystemMap& sm);
Json to_json(const ModuleEmbedding& emb);
/// All intermediate operators of the construction plus its report.
Json to_json(const ExtensionResult& r);

ComplexMatrix matrix_from_json(const Json& j, const std::string& path);
ComplexVector vector_from_json(const Json& j, const std::string& path);
BlockAlgebra algebra_from_json(const Json& j, const std::string& path);
ConcreteModule module_from_json(const Json& j, const std::string& path);
CPMap cpmap_from_json(const Json& j, const std::string& path);
ModuleMap module_map_from_json(const Json& j, const std::string& path);
/// Accepts a number (uniform profile) or {"abs_tol", "rel_tol"}.
ToleranceProfile tolerance_from_json(const Json& j, const std::string& path);
ModuleEmbedding embedding_from_json(const Json& j, const std::string& path);

struct ExtensionInputs {
  ConcreteModule ambient;
  ModuleMap map;
  CPMap phi;
  std::optional<ModuleMap> gamma;
};

/// Decodes an extension_problem payload.
ExtensionInputs extension_inputs_from_json(const Json& payload,
                                           const ToleranceProfile& tol = {});

enum class ProblemKind { kCpMap, kMapPair, kExtensionProblem };

std::string to_string(ProblemKind kind);

/// {"schema_version", "kind", "payload", "tolerance"?}.  Payloads:
///   cp_map:            {"phi"}
///   map_pair:          {"Phi", "phi"}
///   extension_problem: {"E", "Phi", "phi", "F"?, "Gamma"?}
/// where "Phi" carries its own domain module; a separate "F" must span the
/// same space as that domain.
struct ProblemFile {
  std::string schema_version = kSchemaVersion;
  ProblemKind kind = ProblemKind::kCpMap;
  Json payload;
  std::optional<ToleranceProfile> tolerance;
};

Json to_json(const ProblemFile& p);
/// Checks the version, the kind tag and that the payload decodes.
ProblemFile problem_from_json(const Json& j);
/// Parses text; malformed JSON is reported with its byte offset.
ProblemFile parse_problem(const std::string& text);

ProblemFile make_cp_problem(const CPMap& phi);
ProblemFile make_pair_problem(const ModuleMap& map, const CPMap& phi);
ProblemFile make_extension_problem(const ModuleMap& map,
                                   const ConcreteModule& ambient,
                                   const CPMap& phi,
                                   const std::optional<ModuleMap>& gamma = {});

/// Witness records carry the inputs they refute, so they can be checked
/// without the problem file.
///   {"kind": "semiphi", "Phi", "phi", "elements", "vectors", "lhs", "rhs", "gap"}
///   {"kind": "choi", "phi", "vector", "value"}
Json semiphi_witness_to_json(const SemiPhiWitness& w, const ModuleMap& map,
                             const CPMap& phi);
Json choi_witness_to_json(const CPMap& phi, const ComplexVector& v,
                          double value);

/// Recomputes a witness from its embedded inputs.  Returns false when the
/// recomputed values disagree with the stored ones or the witness does not
/// refute anything.
bool revalidate_witness(const Json& witness, const ToleranceProfile& tol = {});

struct ReportFile {
  std::string command;
  std::map<std::string, bool> verdicts;
  std::map<std::string, double> margins;
  std::vector<Json> witnesses;
  Json data = Json::object();
  std::map<std::string, double> timings;
  std::vector<std::string> messages;

  /// Records a verdict together with its margin.
  void verdict(const std::string& name, bool holds, double margin);
};

Json to_json(const ReportFile& r);
/// Throws ValidationError when a verdict lacks a margin or a witness fails
/// re-validation.
ReportFile report_from_json(const Json& j);

}  // namespace semiphi::io
