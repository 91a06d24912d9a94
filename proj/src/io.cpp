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

#include "semiphi/io.hpp"

#include <cmath>

#include "semiphi/error.hpp"

namespace semiphi::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

Eigen::Index index_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<Eigen::Index>();
}

double real_from_json(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Complex complex_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {real_from_json(j[0], path + "[0]"), real_from_json(j[1], path + "[1]")};
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

std::vector<ComplexMatrix> matrices_from_json(const Json& j,
                                              const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<ComplexMatrix> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(matrix_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

// Shape and type errors raised by constructors get the JSON path prepended.
template <typename F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(path + "[0]", "expected a non-empty row");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) fail(rp, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], rp + "[" + std::to_string(c) + "]");
    }
  }
  located(path, [&] {
    require_finite(m, "matrix");
    return 0;
  });
  return m;
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Json to_json(const BlockAlgebra& a) { return {{"blocks", a.blocks()}}; }

BlockAlgebra algebra_from_json(const Json& j, const std::string& path) {
  const Json& blocks = field(j, "blocks", path);
  if (!blocks.is_array()) fail(path + ".blocks", "expected an array");
  std::vector<Eigen::Index> sizes;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    sizes.push_back(
        index_from_json(blocks[i], path + ".blocks[" + std::to_string(i) + "]"));
  }
  return located(path, [&] { return BlockAlgebra(sizes); });
}

Json to_json(const ConcreteModule& e) {
  return {{"algebra", to_json(e.algebra())},
          {"row_dim", e.row_dim()},
          {"basis", matrices_to_json(e.basis())}};
}

ConcreteModule module_from_json(const Json& j, const std::string& path) {
  BlockAlgebra a = algebra_from_json(field(j, "algebra", path), path + ".algebra");
  const Eigen::Index p = index_from_json(field(j, "row_dim", path), path + ".row_dim");
  auto basis = matrices_from_json(field(j, "basis", path), path + ".basis");
  return located(path, [&] { return ConcreteModule(a, p, basis); });
}

Json to_json(const CPMap& phi) {
  return {{"algebra", to_json(phi.domain())},
          {"target_dim", phi.target_dim()},
          {"values_on_units", matrices_to_json(phi.values())}};
}

CPMap cpmap_from_json(const Json& j, const std::string& path) {
  BlockAlgebra a = algebra_from_json(field(j, "algebra", path), path + ".algebra");
  const Eigen::Index m =
      index_from_json(field(j, "target_dim", path), path + ".target_dim");
  auto values = matrices_from_json(field(j, "values_on_units", path),
                                   path + ".values_on_units");
  return located(path, [&] { return CPMap(a, m, values); });
}

Json to_json(const ModuleMap& map) {
  return {{"domain", to_json(map.domain())},
          {"h1_dim", map.h1_dim()},
          {"h2_dim", map.h2_dim()},
          {"values", matrices_to_json(map.values())}};
}

ModuleMap module_map_from_json(const Json& j, const std::string& path) {
  ConcreteModule e = module_from_json(field(j, "domain", path), path + ".domain");
  const Eigen::Index h1 = index_from_json(field(j, "h1_dim", path), path + ".h1_dim");
  const Eigen::Index h2 = index_from_json(field(j, "h2_dim", path), path + ".h2_dim");
  auto values = matrices_from_json(field(j, "values", path), path + ".values");
  return located(path, [&] { return ModuleMap(e, h1, h2, values); });
}

Json to_json(const ToleranceProfile& tol) {
  return {{"abs_tol", tol.abs_tol}, {"rel_tol", tol.rel_tol}};
}

ToleranceProfile tolerance_from_json(const Json& j, const std::string& path) {
  ToleranceProfile tol;
  if (j.is_number()) {
    tol = ToleranceProfile::uniform(j.get<double>());
  } else {
    tol.abs_tol = real_from_json(field(j, "abs_tol", path), path + ".abs_tol");
    tol.rel_tol = real_from_json(field(j, "rel_tol", path), path + ".rel_tol");
  }
  located(path, [&] {
    tol.validate();
    return 0;
  });
  return tol;
}

Json to_json(const PaulsenSystem& s) {
  Json basis = Json::array();
  for (const auto& el : s.basis()) {
    basis.push_back({{"part", std::string(to_string(el.part))},
                     {"index", el.index},
                     {"matrix", to_json(el.matrix)}});
  }
  return {{"module", to_json(s.module())},
          {"layout", {s.layout().top, s.layout().bottom}},
          {"basis", std::move(basis)}};
}

Json to_json(const SystemMap& sm) {
  Json j = {{"domain", to_json(sm.domain)},
            {"codomain", to_json(sm.codomain)},
            {"action", matrices_to_json(sm.action)}};
  if (sm.corner_map) j["corner_map"] = to_json(*sm.corner_map);
  if (sm.diagonal_map) j["diagonal_map"] = to_json(*sm.diagonal_map);
  return j;
}

Json to_json(const ModuleEmbedding& emb) {
  Json j = {{"block_offsets", emb.block_offsets}};
  if (emb.row_map.size() > 0) j["row_map"] = to_json(emb.row_map);
  return j;
}

ModuleEmbedding embedding_from_json(const Json& j, const std::string& path) {
  ModuleEmbedding emb;
  const Json& offsets = field(j, "block_offsets", path);
  if (!offsets.is_array()) fail(path + ".block_offsets", "expected an array");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    emb.block_offsets.push_back(index_from_json(
        offsets[i], path + ".block_offsets[" + std::to_string(i) + "]"));
  }
  if (j.contains("row_map")) {
    emb.row_map = matrix_from_json(j["row_map"], path + ".row_map");
  }
  return emb;
}

ExtensionInputs extension_inputs_from_json(const Json& payload,
                                           const ToleranceProfile& tol) {
  ExtensionInputs in{
      module_from_json(field(payload, "E", "$.payload"), "$.payload.E"),
      module_map_from_json(field(payload, "Phi", "$.payload"), "$.payload.Phi"),
      cpmap_from_json(field(payload, "phi", "$.payload"), "$.payload.phi"),
      std::nullopt};
  if (payload.contains("F")) {
    const ConcreteModule f = module_from_json(payload["F"], "$.payload.F");
    const ConcreteModule& dom = in.map.domain();
    bool same = f.dimension() == dom.dimension() &&
                f.row_dim() == dom.row_dim() && f.algebra() == dom.algebra();
    for (std::size_t k = 0; same && k < f.dimension(); ++k) {
      same = dom.spans(f.basis()[k], tol);
    }
    if (!same) fail("$.payload.F", "does not span the domain of Phi");
  }
  if (payload.contains("Gamma")) {
    in.gamma = module_map_from_json(payload["Gamma"], "$.payload.Gamma");
  }
  return in;
}

Json to_json(const ExtensionResult& r) {
  const ExtensionReport& x = r.report;
  Json report = {{"certified", x.certified},
                 {"empty_submodule", x.empty_submodule},
                 {"zero_phi", x.zero_phi},
                 {"input_margin", x.input_margin},
                 {"input_is_phi_map", x.input_is_phi_map},
                 {"lsq_residual", x.lsq_residual},
                 {"contraction_norm", x.contraction_norm},
                 {"restriction_error", x.restriction_error},
                 {"extension_semi_phi", x.extension_semi_phi},
                 {"extension_margin", x.extension_margin},
                 {"obstruction_vanishes", x.obstruction_vanishes},
                 {"obstruction_norm", x.obstruction_norm},
                 {"parts_checked", x.parts_checked},
                 {"part_i_error", x.part_i_error},
                 {"part_ii_error", x.part_ii_error},
                 {"part_i_holds", x.part_i_holds},
                 {"part_ii_holds", x.part_ii_holds},
                 {"notes", x.notes}};
  Json dilation = {{"rank", r.dilation.rank},
                   {"isometry", to_json(r.dilation.isometry)},
                   {"kraus", matrices_to_json(r.dilation.kraus)},
                   {"reconstruction_error", r.dilation.reconstruction_error}};
  return {{"phi_prime", to_json(r.phi_prime)},
          {"ksgns_map", to_json(r.ksgns_map)},
          {"complement", to_json(r.complement)},
          {"subspace_onb", r.subspace_onb.size() ? to_json(r.subspace_onb) : Json::array()},
          {"projection", r.projection.size() ? to_json(r.projection) : Json::array()},
          {"contraction", r.contraction.size() ? to_json(r.contraction) : Json::array()},
          {"composite", r.composite.size() ? to_json(r.composite) : Json::array()},
          {"dilation", std::move(dilation)},
          {"report", std::move(report)}};
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCpMap:
      return "cp_map";
    case ProblemKind::kMapPair:
      return "map_pair";
    case ProblemKind::kExtensionProblem:
      return "extension_problem";
  }
  return "unknown";
}

Json to_json(const ProblemFile& p) {
  Json j = {{"schema_version", p.schema_version},
            {"kind", to_string(p.kind)},
            {"payload", p.payload}};
  if (p.tolerance) j["tolerance"] = to_json(*p.tolerance);
  return j;
}

ProblemFile problem_from_json(const Json& j) {
  ProblemFile p;
  const Json& version = field(j, "schema_version", "$");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    fail("$.schema_version", std::string("unsupported version (expected \"") +
                                 kSchemaVersion + "\")");
  }
  const Json& kind = field(j, "kind", "$");
  const std::string k = kind.is_string() ? kind.get<std::string>() : "";
  if (k == "cp_map") {
    p.kind = ProblemKind::kCpMap;
  } else if (k == "map_pair") {
    p.kind = ProblemKind::kMapPair;
  } else if (k == "extension_problem") {
    p.kind = ProblemKind::kExtensionProblem;
  } else {
    fail("$.kind", "unknown problem kind \"" + k + "\"");
  }
  p.payload = field(j, "payload", "$");
  if (j.contains("tolerance")) {
    p.tolerance = tolerance_from_json(j["tolerance"], "$.tolerance");
  }
  // Decode once so that schema errors surface at load time.
  const Json& pl = p.payload;
  switch (p.kind) {
    case ProblemKind::kCpMap:
      cpmap_from_json(field(pl, "phi", "$.payload"), "$.payload.phi");
      break;
    case ProblemKind::kMapPair:
      module_map_from_json(field(pl, "Phi", "$.payload"), "$.payload.Phi");
      cpmap_from_json(field(pl, "phi", "$.payload"), "$.payload.phi");
      break;
    case ProblemKind::kExtensionProblem:
      extension_inputs_from_json(pl, p.tolerance.value_or(ToleranceProfile{}));
      break;
  }
  return p;
}

ProblemFile parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON at byte " + std::to_string(e.byte) +
                          ": " + e.what());
  }
  return problem_from_json(j);
}

ProblemFile make_cp_problem(const CPMap& phi) {
  return {kSchemaVersion, ProblemKind::kCpMap, {{"phi", to_json(phi)}}, {}};
}

ProblemFile make_pair_problem(const ModuleMap& map, const CPMap& phi) {
  return {kSchemaVersion,
          ProblemKind::kMapPair,
          {{"Phi", to_json(map)}, {"phi", to_json(phi)}},
          {}};
}

ProblemFile make_extension_problem(const ModuleMap& map,
                                   const ConcreteModule& ambient,
                                   const CPMap& phi,
                                   const std::optional<ModuleMap>& gamma) {
  Json payload = {{"E", to_json(ambient)},
                  {"F", to_json(map.domain())},
                  {"Phi", to_json(map)},
                  {"phi", to_json(phi)}};
  if (gamma) payload["Gamma"] = to_json(*gamma);
  return {kSchemaVersion, ProblemKind::kExtensionProblem, std::move(payload), {}};
}

Json semiphi_witness_to_json(const SemiPhiWitness& w, const ModuleMap& map,
                             const CPMap& phi) {
  Json vectors = Json::array();
  for (const auto& v : w.vectors) vectors.push_back(to_json(v));
  return {{"kind", "semiphi"},
          {"Phi", to_json(map)},
          {"phi", to_json(phi)},
          {"elements", matrices_to_json(w.elements)},
          {"vectors", std::move(vectors)},
          {"lhs", w.lhs},
          {"rhs", w.rhs},
          {"gap", w.gap}};
}

Json choi_witness_to_json(const CPMap& phi, const ComplexVector& v,
                          double value) {
  return {{"kind", "choi"},
          {"phi", to_json(phi)},
          {"vector", to_json(v)},
          {"value", value}};
}

bool revalidate_witness(const Json& w, const ToleranceProfile& tol) {
  const Json& kind = field(w, "kind", "$.witness");
  if (kind == "semiphi") {
    const ModuleMap map = module_map_from_json(field(w, "Phi", "$.witness"),
                                               "$.witness.Phi");
    const CPMap phi = cpmap_from_json(field(w, "phi", "$.witness"), "$.witness.phi");
    auto elements = matrices_from_json(field(w, "elements", "$.witness"),
                                       "$.witness.elements");
    const Json& vs = field(w, "vectors", "$.witness");
    if (!vs.is_array()) fail("$.witness.vectors", "expected an array");
    std::vector<ComplexVector> vectors;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      vectors.push_back(
          vector_from_json(vs[i], "$.witness.vectors[" + std::to_string(i) + "]"));
    }
    const SemiPhiWitness re =
        located("$.witness", [&] {
          return evaluate_witness(map, phi, std::move(elements),
                                  std::move(vectors), tol);
        });
    const double lhs = real_from_json(field(w, "lhs", "$.witness"), "$.witness.lhs");
    const double rhs = real_from_json(field(w, "rhs", "$.witness"), "$.witness.rhs");
    const double gap = real_from_json(field(w, "gap", "$.witness"), "$.witness.gap");
    return close(re.lhs, lhs) && close(re.rhs, rhs) && close(re.gap, gap) &&
           re.gap > 0.0;
  }
  if (kind == "choi") {
    const CPMap phi = cpmap_from_json(field(w, "phi", "$.witness"), "$.witness.phi");
    const ComplexVector v =
        vector_from_json(field(w, "vector", "$.witness"), "$.witness.vector");
    const double value =
        real_from_json(field(w, "value", "$.witness"), "$.witness.value");
    const ComplexMatrix j = located("$.witness", [&] { return choi(phi, tol); });
    if (v.size() != j.rows() || v.norm() == 0.0) return false;
    const double re = (v.adjoint() * j * v)(0, 0).real() / v.squaredNorm();
    return close(re, value) && re < -tol.threshold(operator_norm(j));
  }
  fail("$.witness.kind", "unknown witness kind");
}

void ReportFile::verdict(const std::string& name, bool holds, double margin) {
  verdicts[name] = holds;
  margins[name] = margin;
}

Json to_json(const ReportFile& r) {
  Json margins = Json::object();
  for (const auto& [k, v] : r.margins) {
    margins[k] = std::isfinite(v) ? Json(v) : Json(nullptr);
  }
  return {{"schema_version", kSchemaVersion},
          {"command", r.command},
          {"verdicts", r.verdicts},
          {"margins", std::move(margins)},
          {"witnesses", r.witnesses},
          {"data", r.data},
          {"timings", r.timings},
          {"messages", r.messages}};
}

ReportFile report_from_json(const Json& j) {
  ReportFile r;
  const Json& version = field(j, "schema_version", "$");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    fail("$.schema_version", "unsupported version");
  }
  r.command = field(j, "command", "$").get<std::string>();
  for (const auto& [k, v] : field(j, "verdicts", "$").items()) {
    if (!v.is_boolean()) fail("$.verdicts." + k, "expected a boolean");
    r.verdicts[k] = v.get<bool>();
  }
  for (const auto& [k, v] : field(j, "margins", "$").items()) {
    r.margins[k] = v.is_null() ? std::nan("") : real_from_json(v, "$.margins." + k);
  }
  for (const auto& [k, v] : r.verdicts) {
    if (!r.margins.contains(k)) fail("$.margins", "verdict \"" + k + "\" has no margin");
  }
  const Json& witnesses = field(j, "witnesses", "$");
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (!revalidate_witness(witnesses[i])) {
      fail("$.witnesses[" + std::to_string(i) + "]", "witness does not re-validate");
    }
    r.witnesses.push_back(witnesses[i]);
  }
  r.data = field(j, "data", "$");
  for (const auto& [k, v] : field(j, "timings", "$").items()) {
    r.timings[k] = real_from_json(v, "$.timings." + k);
  }
  for (const auto& m : field(j, "messages", "$")) r.messages.push_back(m.get<std::string>());
  return r;
}

}  // namespace semiphi::io
