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
#include "semiphi/paulsen.hpp"

using namespace semiphi;
using Catch::Approx;

namespace {

ComplexMatrix scalar(Complex c) { return ComplexMatrix::Constant(1, 1, c); }

ConcreteModule scalar_module() {
  return ConcreteModule(BlockAlgebra::full(1), 1, {scalar(1.0)});
}

ModuleMap scalar_map(Complex c) { return ModuleMap(scalar_module(), 1, 1, {scalar(c)}); }

const CPMap& scalar_id() {
  static const CPMap id = CPMap::identity(BlockAlgebra::full(1));
  return id;
}

ModuleMap identity_map(const ConcreteModule& e) {
  return ModuleMap(e, e.col_dim(), e.row_dim(), e.basis());
}

}  // namespace

TEST_CASE("build_system examples", "[paulsen]") {
  const auto s1 = build_system(scalar_module());
  CHECK(s1.dimension() == 4);
  Rng rng(61);
  CHECK(s1.contains(random_complex_matrix(rng, 2, 2)));

  std::vector<ComplexMatrix> units;
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) units.push_back(matrix_unit(2, i, j));
  }
  const auto s2 = build_system(ConcreteModule(BlockAlgebra::full(2), 2, units));
  CHECK(s2.dimension() == 13);
  CHECK(s2.layout().size() == 4);
  CHECK(s2.contains(ComplexMatrix::Identity(4, 4)));
  // A non-scalar top-left block is outside the system.
  ComplexMatrix e00 = ComplexMatrix::Zero(4, 4);
  e00(0, 0) = 1.0;
  CHECK_FALSE(s2.contains(e00));

  for (Eigen::Index n = 1; n <= 3; ++n) {
    const auto s = build_system(example_2_1(n).e);
    CHECK(s.layout().top == 2 * n);
    CHECK(s.layout().bottom == n);
    CHECK(static_cast<Eigen::Index>(s.dimension()) == 1 + 2 * 2 * n * n + n * n);
  }
}

TEST_CASE("systems are self-adjoint", "[paulsen][property]") {
  Rng rng(62);
  for (int t = 0; t < 20; ++t) {
    const auto fx = random_extension_fixture(rng, 1.0);
    const auto s = build_system(fx.e);
    CHECK(s.dimension() ==
          1 + 2 * fx.e.dimension() + static_cast<std::size_t>(fx.e.algebra().dimension()));
    CHECK(s.contains(ComplexMatrix::Identity(s.layout().size(), s.layout().size())));
    for (const auto& el : s.basis()) CHECK(s.contains(el.matrix.adjoint()));
  }
}

TEST_CASE("block_map action", "[paulsen]") {
  const auto fx = example_2_1(1);
  const auto id = block_map(identity_map(fx.e), fx.phi);
  Rng rng(63);
  const ComplexMatrix x = oracle::random_psd_system_element(fx.e, 1, rng);
  CHECK((id.apply(x) - x).norm() < 1e-10);
  CHECK(id.is_unital());

  const Complex c(0.3, 0.4);
  const auto sm = block_map(scalar_map(c), scalar_id());
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  ComplexMatrix expected(2, 2);
  expected << 1.0, c * 2.0, std::conj(c) * 3.0, 4.0;
  CHECK((sm.apply(m) - expected).norm() < 1e-12);

  const auto ext = extend_semi_phi(fx.map, fx.e, fx.phi);
  const auto sum = block_map(ext.phi_prime, fx.phi);
  CHECK(sum.is_unital());
  CHECK(is_corner_preserving(sum).preserving);

  CHECK_THROWS_AS(block_map(scalar_map(1.0), scalar_id(), operator_codomain(2, 1)),
                  ShapeError);
}

TEST_CASE("block_map agrees with the defining formula", "[paulsen][property]") {
  Rng rng(64);
  for (int t = 0; t < 30; ++t) {
    const auto fx = random_extension_fixture(rng, 1.0);
    if (fx.map.h2_dim() == 0) continue;
    const auto sm = block_map(fx.map, fx.phi);
    // F itself is the domain of Phi.
    for (Eigen::Index n = 1; n <= 2; ++n) {
      const ComplexMatrix s = oracle::random_psd_system_element(fx.f, n, rng);
      const ComplexMatrix got = sm.apply_n(n, s);
      const ComplexMatrix want = oracle::block_map_by_definition(fx.map, fx.phi, s);
      CHECK((got - want).norm() < 1e-9 * std::max(1.0, want.norm()));
    }
  }
}

TEST_CASE("is_cp_system_map examples", "[paulsen]") {
  CHECK(is_cp_system_map(block_map(scalar_map(1.0), scalar_id())).completely_positive);

  const auto bad = block_map(scalar_map(2.0), scalar_id());
  CHECK_FALSE(is_cp_system_map(bad).completely_positive);
  const ComplexMatrix ones = ComplexMatrix::Ones(2, 2);
  CHECK(oracle::psd(ones, 1e-12));
  ComplexMatrix expected(2, 2);
  expected << 1.0, 2.0, 2.0, 1.0;
  const ComplexMatrix image = bad.apply(ones);
  CHECK((image - expected).norm() < 1e-12);
  CHECK(oracle::min_eigenvalue(image) == Approx(-1.0).margin(1e-10));

  for (Eigen::Index n = 1; n <= 2; ++n) {
    const auto fx = example_2_1(n);
    const auto r = is_cp_system_map(block_map(fx.map, fx.phi));
    CHECK(r.completely_positive);
    CHECK(r.sampling_consistent);
    CHECK(r.samples_checked == 150);
  }

  SystemMap raw = block_map(scalar_map(1.0), scalar_id());
  raw.corner_map.reset();
  CHECK_THROWS_AS(is_cp_system_map(raw), ValidationError);
}

TEST_CASE("block_map is functorial", "[paulsen][property]") {
  Rng rng(65);
  for (int t = 0; t < 20; ++t) {
    const auto fx = random_extension_fixture(rng, 1.0);
    if (fx.map.h2_dim() == 0) continue;
    const auto inner = block_map(fx.map, fx.phi);
    // Second stage: (Psi, psi) on the operator module B(H1, H2) over M_{h1}.
    const Eigen::Index h1 = fx.map.h1_dim();
    const Eigen::Index h2 = fx.map.h2_dim();
    const auto target = operator_codomain(h1, h2).module();
    const auto kraus = random_kraus(rng, 2, h1, 2);
    const CPMap psi = CPMap::from_kraus(BlockAlgebra::full(h1), kraus);
    const ComplexMatrix w = random_complex_matrix(rng, 2, h2);
    const ModuleMap big_psi = ModuleMap::from_function(
        target, 2, 2, [&](const ComplexMatrix& x) { return ComplexMatrix(w * x * kraus[0].adjoint()); });
    const auto outer = block_map(big_psi, psi);
    const auto composed = compose(outer, inner);
    const auto direct = block_map(compose(big_psi, fx.map), compose(psi, fx.phi));
    REQUIRE(composed.action.size() == direct.action.size());
    double dev = 0.0;
    for (std::size_t i = 0; i < direct.action.size(); ++i) {
      dev = std::max(dev, (composed.action[i] - direct.action[i]).norm());
    }
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("corner preservation", "[paulsen]") {
  const auto fx = example_2_1(1);
  CHECK(is_corner_preserving(block_map(fx.map, fx.phi)).preserving);

  std::vector<ComplexMatrix> in, out;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) in.push_back(matrix_unit(3, i, j));
  }
  CHECK(is_corner_preserving(in, in, {1, 2}, {1, 2}).preserving);
  // Swapping the roles of two coordinates moves a corner entry into the
  // diagonal part.
  ComplexMatrix p = ComplexMatrix::Zero(3, 3);
  p(0, 1) = p(1, 0) = p(2, 2) = 1.0;
  for (const auto& m : in) out.push_back(p * m * p.transpose());
  const auto r = is_corner_preserving(in, out, {1, 2}, {1, 2});
  CHECK_FALSE(r.preserving);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("the non-corner-preserving example map", "[paulsen]") {
  for (Eigen::Index h = 1; h <= 2; ++h) {
    const CPMap phi = example_3_4_map(h);
    CHECK((phi.apply(ComplexMatrix::Identity(2 * h, 2 * h)) -
           ComplexMatrix::Identity(4 * h, 4 * h))
              .norm() <= 1e-12);
    CHECK(is_completely_positive(phi).margin >= -1e-10);
    CHECK(oracle::min_eigenvalue(choi(phi)) >= -1e-10);
  }
  const CPMap phi = example_3_4_map(1);
  ComplexMatrix t2 = ComplexMatrix::Zero(2, 2);
  t2(0, 1) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 3) = 1.0;
  CHECK((phi.apply(t2) - expected).norm() == 0.0);
}

TEST_CASE("injectivity demonstration", "[paulsen]") {
  // G = F: the extension is the identity extension.
  const ConcreteModule col(BlockAlgebra::full(1), 1, {scalar(1.0)});
  const ModuleMap map(col, 1, 1, {scalar(0.5)});
  const auto same = injectivity_demo(col, col, ModuleEmbedding::identity(col.algebra()),
                                     map, scalar_id());
  CHECK(same.success);
  CHECK(std::abs(same.extension.phi_prime.values()[0](0, 0) - 0.5) < 1e-12);

  Rng rng(66);
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (int t = 0; t < 5; ++t) {
      const auto fx = random_containment_fixture(rng, n);
      const auto r = injectivity_demo(fx.g, fx.f, fx.embedding, fx.map, fx.phi);
      CHECK(r.success);
      CHECK(r.restriction_error <= 1e-8);
    }
  }
}
