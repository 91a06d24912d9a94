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

using namespace semiphi;
using Catch::Approx;

namespace {

ComplexMatrix scalar(Complex c) { return ComplexMatrix::Constant(1, 1, c); }

// E = C (+) C over itself, F = C (+) 0, phi(a (+) b) = a, Phi(t (+) 0) = t.
struct DiagonalFixture {
  ConcreteModule e;
  ConcreteModule f;
  CPMap phi;
  ModuleMap map;
};

DiagonalFixture diagonal_fixture() {
  const BlockAlgebra a({1, 1});
  ConcreteModule e(a, 2, {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
  ConcreteModule f(a, 2, {matrix_unit(2, 0, 0)});
  CPMap phi(a, 1, {scalar(1.0), scalar(0.0)});
  ModuleMap map(f, 1, 1, {scalar(1.0)});
  return {e, f, phi, map};
}

// The scalar model: E = C over C, phi = id, Phi = multiplication by c.
ModuleMap scalar_map(Complex c) {
  const ConcreteModule e(BlockAlgebra::full(1), 1, {scalar(1.0)});
  return ModuleMap(e, 1, 1, {scalar(c)});
}

const CPMap& scalar_id() {
  static const CPMap id = CPMap::identity(BlockAlgebra::full(1));
  return id;
}

double max_value_distance(const ModuleMap& a, const std::vector<ComplexMatrix>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) d = std::max(d, (a.values()[k] - b[k]).norm());
  return d;
}

}  // namespace

TEST_CASE("is_phi_map examples", "[extension]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  std::vector<ComplexMatrix> units;
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) units.push_back(matrix_unit(2, i, j));
  }
  const ConcreteModule e(m2, 2, units);
  CHECK(is_phi_map(ModuleMap(e, 2, 2, units), CPMap::identity(m2)).holds);

  for (Eigen::Index n = 1; n <= 3; ++n) {
    const auto fx = example_2_1(n);
    CHECK(is_phi_map(fx.map, fx.phi).holds);
    const auto r = extend_semi_phi(fx.map, fx.e, fx.phi);
    const auto pm = is_phi_map(r.phi_prime, fx.phi);
    CHECK_FALSE(pm.holds);
    // The failing pair involves the second summand.
    CHECK(std::max(pm.worst_i, pm.worst_j) >= static_cast<std::size_t>(n * n));
  }
}

TEST_CASE("is_nondegenerate examples", "[extension]") {
  const auto fx = example_2_1(1);
  CHECK(is_nondegenerate(fx.map));
  CHECK_FALSE(is_nondegenerate(ModuleMap::zero(fx.f, 1, 1)));
  const auto r = extend_semi_phi(fx.map, fx.e, fx.phi);
  CHECK(is_nondegenerate(r.phi_prime));
}

TEST_CASE("KSGNS construction", "[extension]") {
  const ConcreteModule e(BlockAlgebra::full(1), 2,
                         {ComplexMatrix(ComplexVector::Unit(2, 0)), ComplexMatrix(ComplexVector::Unit(2, 1))});
  const auto k = ksgns(scalar_id(), e);
  CHECK(k.map.h2_dim() == 2);
  CHECK(k.subspace_onb.cols() == 2);
  // Phi_phi(e_i) are orthonormal columns: the identity embedding up to a
  // unitary on H_phi.
  ComplexMatrix cols(2, 2);
  cols << k.map.values()[0], k.map.values()[1];
  CHECK((cols.adjoint() * cols - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const auto fx = random_extension_fixture(rng, 1.0);
    const auto kk = ksgns(fx.phi, fx.e);
    CHECK(is_phi_map(kk.map, fx.phi).holds);
    CHECK(is_nondegenerate(kk.map));
  }

  const auto z = ksgns(CPMap::zero(BlockAlgebra::full(1), 1), e);
  CHECK(z.map.h2_dim() == 0);
  CHECK_THROWS_AS(ksgns(CPMap::transpose(BlockAlgebra::full(2)), example_2_1(2).e),
                  NotCompletelyPositive);
}

TEST_CASE("semi-phi verdicts in the scalar model", "[extension]") {
  CHECK(is_completely_semi_phi(scalar_map(1.0), scalar_id()).holds);
  CHECK(is_completely_semi_phi(scalar_map(Complex(0.6, 0.8)), scalar_id()).holds);
  const auto r = is_completely_semi_phi(scalar_map(2.0), scalar_id());
  CHECK_FALSE(r.holds);
  CHECK(r.margin == Approx(-3.0));

  for (Eigen::Index n = 1; n <= 2; ++n) {
    const auto fx = example_2_1(n);
    const auto pm = is_completely_semi_phi(fx.map, fx.phi);
    CHECK(pm.holds);
    CHECK(std::abs(pm.margin) < 1e-9);
    const auto ext = extend_semi_phi(fx.map, fx.e, fx.phi);
    CHECK(is_completely_semi_phi(ext.phi_prime, fx.phi).holds);
  }
}

TEST_CASE("semi-phi witnesses", "[extension]") {
  const auto w = semiphi_witness(scalar_map(2.0), scalar_id());
  REQUIRE(w.has_value());
  CHECK(w->lhs / w->rhs == Approx(4.0));
  CHECK(w->gap > 0.0);
  const auto unit = evaluate_witness(scalar_map(2.0), scalar_id(), {scalar(1.0)},
                                     {ComplexVector::Ones(1)});
  CHECK(unit.lhs == Approx(4.0));
  CHECK(unit.rhs == Approx(1.0));

  CHECK_FALSE(semiphi_witness(scalar_map(1.0), scalar_id()).has_value());

  Rng rng(52);
  int refuted = 0;
  for (int t = 0; t < 40; ++t) {
    const auto fx = random_extension_fixture(rng, 3.0);
    const auto wit = semiphi_witness(fx.map, fx.phi);
    if (!wit) continue;
    ++refuted;
    const auto again =
        evaluate_witness(fx.map, fx.phi, wit->elements, wit->vectors);
    CHECK(again.gap > 0.0);
    CHECK(again.gap == Approx(wit->gap));
  }
  CHECK(refuted > 0);
}

TEST_CASE("phi-maps are semi-phi and annihilate the obstruction",
          "[extension][property]") {
  Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    const auto fx = random_vanishing_fixture(rng);
    CHECK(is_phi_map(fx.map, fx.phi).holds);
    CHECK(is_completely_semi_phi(fx.map, fx.phi).holds);
    // A phi-map extension exists by construction (the KSGNS map on E).
    const auto k = ksgns(fx.phi, fx.e);
    CHECK(is_completely_semi_phi(k.map, fx.phi).holds);
    CHECK(phi_extension_obstruction(fx.phi, fx.f, fx.e).vanishes);
  }
}

TEST_CASE("obstruction examples", "[extension]") {
  const auto fx = example_2_1(2);
  const auto obs = phi_extension_obstruction(fx.phi, fx.f, fx.e);
  CHECK_FALSE(obs.vanishes);
  CHECK(obs.norm > 0.1);
  CHECK(phi_extension_obstruction(fx.phi, fx.e, fx.e).vanishes);
  const auto d = diagonal_fixture();
  CHECK(phi_extension_obstruction(d.phi, d.f, d.e).vanishes);
  CHECK_THROWS_AS(phi_extension_obstruction(fx.phi, fx.e, fx.f), PreconditionError);
}

TEST_CASE("extension examples", "[extension]") {
  const auto fx = example_2_1(1);
  const auto r = extend_semi_phi(fx.map, fx.e, fx.phi);
  CHECK(r.report.certified);
  CHECK(max_value_distance(r.phi_prime, {scalar(1.0), scalar(0.0)}) < 1e-12);

  const auto same = extend_semi_phi(fx.map, fx.f, fx.phi);
  CHECK(max_value_distance(same.phi_prime, fx.map.values()) < 1e-12);

  const auto d = diagonal_fixture();
  const auto rd = extend_semi_phi(d.map, d.e, d.phi);
  CHECK(max_value_distance(rd.phi_prime, {scalar(1.0), scalar(0.0)}) < 1e-12);
  CHECK(is_phi_map(rd.phi_prime, d.phi).holds);
  CHECK(rd.report.parts_checked);
  CHECK(rd.report.part_i_holds);
  CHECK(rd.report.part_ii_holds);

  CHECK_THROWS_AS(extend_semi_phi(scalar_map(2.0), scalar_map(2.0).domain(), scalar_id()),
                  PreconditionError);

  const auto empty = extend_semi_phi(
      ModuleMap::zero(ConcreteModule::zero(BlockAlgebra::full(1), 2), 1, 1), fx.e,
      fx.phi);
  CHECK(empty.report.empty_submodule);
  CHECK(max_value_distance(empty.phi_prime, {scalar(0.0), scalar(0.0)}) == 0.0);

  const auto zero_phi = extend_semi_phi(ModuleMap::zero(fx.f, 1, 1), fx.e,
                                        CPMap::zero(BlockAlgebra::full(1), 1));
  CHECK(zero_phi.report.zero_phi);
}

TEST_CASE("extension intermediates are consistent", "[extension][property]") {
  Rng rng(54);
  for (int t = 0; t < 40; ++t) {
    const auto fx = random_extension_fixture(rng, 0.9);
    const auto r = extend_semi_phi(fx.map, fx.e, fx.phi);
    CHECK(r.report.certified);
    CHECK(r.report.restriction_error <= 1e-8);
    CHECK(r.report.extension_semi_phi);
    CHECK(r.report.contraction_norm <= 1.0 + 1e-8);
    for (std::size_t b = 0; b < fx.e.dimension(); ++b) {
      const ComplexMatrix via_s = r.composite * r.ksgns_map.values()[b];
      CHECK((via_s - r.phi_prime.values()[b]).norm() < 1e-10);
    }
    for (const auto& f : fx.f.basis()) {
      CHECK((r.phi_prime.evaluate(f) - fx.map.evaluate(f)).norm() < 1e-8);
    }
  }
}

TEST_CASE("compare_extensions", "[extension]") {
  const auto d = diagonal_fixture();
  const auto r = extend_semi_phi(d.map, d.e, d.phi);
  CHECK(compare_extensions(r.phi_prime, r, d.phi, d.f).equal);
  const ModuleMap gamma(d.e, 1, 1, {scalar(1.0), scalar(0.0)});
  CHECK(compare_extensions(gamma, r, d.phi, d.f).equal);
  const ModuleMap perturbed(d.e, 1, 1, {scalar(1.0), scalar(1e-2)});
  CHECK_THROWS_AS(compare_extensions(perturbed, r, d.phi, d.f), PreconditionError);

  const auto fx = example_2_1(2);
  const auto r2 = extend_semi_phi(fx.map, fx.e, fx.phi);
  CHECK_THROWS_AS(compare_extensions(r2.phi_prime, r2, fx.phi, fx.f),
                  PreconditionError);
}

TEST_CASE("canonical compacts extension", "[extension]") {
  const auto d = diagonal_fixture();
  const auto g = canonical_compacts_extension(d.map, d.e, d.phi);
  CHECK(max_value_distance(g, {scalar(1.0), scalar(0.0)}) < 1e-12);
  CHECK(is_phi_map(g, d.phi).holds);

  const auto fx = example_2_1(2);
  CHECK_THROWS_AS(canonical_compacts_extension(fx.map, fx.e, fx.phi), ObstructionError);
  const auto self = canonical_compacts_extension(fx.map, fx.f, fx.phi);
  CHECK(max_value_distance(self, fx.map.values()) < 1e-12);

  for (Eigen::Index n = 1; n <= 3; ++n) {
    const auto c = compacts_2_6(n);
    const auto cg = canonical_compacts_extension(c.map, c.e, c.phi);
    CHECK(is_phi_map(cg, c.phi).holds);
  }
}

TEST_CASE("sampling oracle agrees with the scalar verdicts", "[extension]") {
  Rng rng(55);
  CHECK(oracle::sample_semiphi(scalar_map(1.0), scalar_id(), 2, 20, rng) > -1e-12);
  CHECK(oracle::sample_semiphi(scalar_map(2.0), scalar_id(), 1, 5, rng) < -0.5);
}
