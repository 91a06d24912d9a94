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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "semiphi/error.hpp"
#include "semiphi/io.hpp"

using namespace semiphi;
using namespace semiphi::io;

namespace {

bool same_values(const std::vector<ComplexMatrix>& a,
                 const std::vector<ComplexMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) return false;
    if (a[i] != b[i]) return false;
  }
  return true;
}

// Serialises, reparses from text, and decodes again.
Json through_text(const Json& j) { return Json::parse(j.dump()); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("round trips are exact", "[io][property]") {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const auto fx = random_extension_fixture(rng, 1.0);
    const ComplexMatrix m = random_complex_matrix(rng, 3, 2);
    CHECK(matrix_from_json(through_text(to_json(m)), "$") == m);
    const ComplexVector v = random_complex_matrix(rng, 4, 1).col(0);
    CHECK(vector_from_json(through_text(to_json(v)), "$") == v);
    CHECK(algebra_from_json(through_text(to_json(fx.e.algebra())), "$") ==
          fx.e.algebra());
    const auto e = module_from_json(through_text(to_json(fx.e)), "$");
    CHECK(e.row_dim() == fx.e.row_dim());
    CHECK(same_values(e.basis(), fx.e.basis()));
    const auto phi = cpmap_from_json(through_text(to_json(fx.phi)), "$");
    CHECK(phi.target_dim() == fx.phi.target_dim());
    CHECK(same_values(phi.values(), fx.phi.values()));
    const auto map = module_map_from_json(through_text(to_json(fx.map)), "$");
    CHECK(map.h1_dim() == fx.map.h1_dim());
    CHECK(map.h2_dim() == fx.map.h2_dim());
    CHECK(same_values(map.values(), fx.map.values()));
    CHECK(same_values(map.domain().basis(), fx.map.domain().basis()));
  }
  const ToleranceProfile tol{1e-7, 3e-6};
  const auto back = tolerance_from_json(through_text(to_json(tol)), "$");
  CHECK(back.abs_tol == tol.abs_tol);
  CHECK(back.rel_tol == tol.rel_tol);
  CHECK(tolerance_from_json(Json(1e-5), "$").rel_tol == 1e-5);

  ModuleEmbedding emb;
  emb.block_offsets = {0, 2};
  emb.row_map = random_complex_matrix(rng, 2, 1);
  const auto eb = embedding_from_json(through_text(to_json(emb)), "$");
  CHECK(eb.block_offsets == emb.block_offsets);
  CHECK(eb.row_map == emb.row_map);
}

TEST_CASE("problem files", "[io]") {
  const auto fx = example_2_1(2);
  const auto p = make_extension_problem(fx.map, fx.e, fx.phi);
  const auto q = parse_problem(to_json(p).dump());
  CHECK(q.kind == ProblemKind::kExtensionProblem);
  CHECK(q.schema_version == kSchemaVersion);
  const auto in = extension_inputs_from_json(q.payload);
  CHECK(same_values(in.map.values(), fx.map.values()));
  CHECK(in.ambient.dimension() == fx.e.dimension());
  CHECK_FALSE(in.gamma.has_value());

  auto pair = to_json(make_pair_problem(fx.map, fx.phi));
  CHECK(problem_from_json(pair).kind == ProblemKind::kMapPair);
  auto cp = to_json(make_cp_problem(fx.phi));
  cp["tolerance"] = {{"abs_tol", 1e-6}, {"rel_tol", 1e-7}};
  const auto cpf = problem_from_json(cp);
  REQUIRE(cpf.tolerance.has_value());
  CHECK(cpf.tolerance->abs_tol == 1e-6);
}

TEST_CASE("malformed inputs name their location", "[io]") {
  const std::string broken = R"({"schema_version": "1.0", "kind": )";
  CHECK(error_of([&] { parse_problem(broken); }).find("byte") != std::string::npos);

  Json bad_version = to_json(make_cp_problem(CPMap::identity(BlockAlgebra::full(1))));
  bad_version["schema_version"] = "0.1";
  CHECK_FALSE(error_of([&] { problem_from_json(bad_version); }).empty());

  Json bad_kind = bad_version;
  bad_kind["schema_version"] = kSchemaVersion;
  bad_kind["kind"] = "nonsense";
  CHECK(error_of([&] { problem_from_json(bad_kind); }).find("$.kind") !=
        std::string::npos);

  const auto fx = example_2_1(1);
  Json pair = to_json(make_pair_problem(fx.map, fx.phi));
  pair["payload"]["Phi"]["values"][0] = "oops";
  CHECK(error_of([&] { problem_from_json(pair); })
            .find("$.payload.Phi.values[0]") != std::string::npos);

  Json ragged = Json::array({Json::array({Json::array({1, 0}), Json::array({0, 0})}),
                             Json::array({Json::array({1, 0})})});
  CHECK_FALSE(error_of([&] { matrix_from_json(ragged, "$.m"); }).empty());
  CHECK_FALSE(error_of([&] { tolerance_from_json(Json(-1.0), "$.t"); }).empty());
  CHECK_FALSE(error_of([&] { algebra_from_json(Json{{"blocks", {0}}}, "$.a"); }).empty());
}

TEST_CASE("witness records re-validate", "[io]") {
  const ConcreteModule e(BlockAlgebra::full(1), 1, {ComplexMatrix::Ones(1, 1)});
  const ModuleMap map(e, 1, 1, {2.0 * ComplexMatrix::Ones(1, 1)});
  const CPMap id = CPMap::identity(BlockAlgebra::full(1));
  const auto w = semiphi_witness(map, id);
  REQUIRE(w.has_value());
  Json wj = semiphi_witness_to_json(*w, map, id);
  CHECK(revalidate_witness(through_text(wj)));
  Json tampered = wj;
  tampered["lhs"] = 0.5;
  CHECK_FALSE(revalidate_witness(tampered));

  // A Choi witness for the transpose map.
  const CPMap t = CPMap::transpose(BlockAlgebra::full(2));
  const auto cp = is_completely_positive(t);
  Json cj = choi_witness_to_json(t, cp.choi_psd.min_eigenvector, cp.margin);
  CHECK(revalidate_witness(through_text(cj)));
  Json wrong = choi_witness_to_json(CPMap::identity(BlockAlgebra::full(2)),
                                    cp.choi_psd.min_eigenvector, cp.margin);
  CHECK_FALSE(revalidate_witness(wrong));
}

TEST_CASE("report files", "[io]") {
  ReportFile r;
  r.command = "check-semiphi";
  r.verdict("completely_semi_phi", false, -3.0);
  r.verdict("nan_margin", true, std::nan(""));
  const ConcreteModule e(BlockAlgebra::full(1), 1, {ComplexMatrix::Ones(1, 1)});
  const ModuleMap map(e, 1, 1, {2.0 * ComplexMatrix::Ones(1, 1)});
  const CPMap id = CPMap::identity(BlockAlgebra::full(1));
  r.witnesses.push_back(semiphi_witness_to_json(*semiphi_witness(map, id), map, id));
  r.timings["total_seconds"] = 0.5;
  const Json j = through_text(to_json(r));
  CHECK(j["margins"]["nan_margin"].is_null());
  const ReportFile back = report_from_json(j);
  CHECK(back.verdicts.at("completely_semi_phi") == false);
  CHECK(back.margins.at("completely_semi_phi") == -3.0);
  CHECK(back.witnesses.size() == 1);

  Json missing = j;
  missing["margins"].erase("completely_semi_phi");
  CHECK_THROWS_AS(report_from_json(missing), ValidationError);
  Json forged = j;
  forged["witnesses"][0]["gap"] = -1.0;
  CHECK_THROWS_AS(report_from_json(forged), ValidationError);
}

TEST_CASE("extension results serialise their intermediates", "[io]") {
  const auto fx = example_2_1(1);
  const auto r = extend_semi_phi(fx.map, fx.e, fx.phi);
  const Json j = to_json(r);
  for (const char* key : {"phi_prime", "ksgns_map", "subspace_onb", "projection",
                          "contraction", "composite", "dilation", "report"}) {
    CHECK(j.contains(key));
  }
  const auto back = module_map_from_json(j["phi_prime"], "$.phi_prime");
  CHECK(same_values(back.values(), r.phi_prime.values()));
  CHECK(to_json(build_system(fx.e)).contains("basis"));
}
