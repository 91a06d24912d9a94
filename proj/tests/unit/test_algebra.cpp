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

TEST_CASE("contains on small examples", "[algebra]") {
  const BlockAlgebra diag({1, 1});
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 4.0;
  CHECK(contains(diag, d));
  ComplexMatrix full(2, 2);
  full << 1.0, 2.0, 3.0, 4.0;
  CHECK_FALSE(contains(diag, full));
  CHECK(contains(BlockAlgebra::full(2), full));
  CHECK_THROWS_AS(contains(diag, ComplexMatrix::Zero(3, 3)), ShapeError);
}

TEST_CASE("block algebra structure", "[algebra]") {
  const BlockAlgebra a({2, 1, 3});
  CHECK(a.ambient_dim() == 6);
  CHECK(a.dimension() == 4 + 1 + 9);
  CHECK(a.block_offset(2) == 3);
  CHECK(a.block_of(4) == 2);
  // Units are block-major, then row-major.
  CHECK(a.units()[0].row == 0);
  CHECK(a.units()[1].col == 1);
  CHECK(a.units()[4].row == 2);
  CHECK(a.unit_index(0, 3) == std::nullopt);
  CHECK(a.unit_index(3, 5).has_value());
  CHECK_THROWS_AS(BlockAlgebra({}), ValidationError);
  CHECK_THROWS_AS(BlockAlgebra({2, 0}), ValidationError);
}

TEST_CASE("pinch examples", "[algebra]") {
  const BlockAlgebra diag({1, 1});
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = 4.0;
  CHECK(pinch(diag, m).value == expected);
  CHECK(pinch(BlockAlgebra::full(2), m).value == m);
}

TEST_CASE("pinch is idempotent, contractive and lands in the algebra",
          "[algebra][property]") {
  Rng rng(21);
  const std::vector<BlockAlgebra> algebras = {
      BlockAlgebra({1, 1}), BlockAlgebra({2, 1}), BlockAlgebra({1, 2, 1}),
      BlockAlgebra::full(3)};
  for (const auto& a : algebras) {
    for (int t = 0; t < 25; ++t) {
      const ComplexMatrix m =
          random_complex_matrix(rng, a.ambient_dim(), a.ambient_dim());
      const ComplexMatrix p = pinch_matrix(a, m);
      CHECK(contains(a, p));
      CHECK((pinch_matrix(a, p) - p).norm() < 1e-14);
      CHECK(operator_norm(p) <= operator_norm(m) * (1 + 1e-12));
    }
    CHECK((pinch_matrix(a, a.identity()) - a.identity()).norm() == 0.0);
  }
}

TEST_CASE("is_positive_element examples", "[algebra]") {
  const BlockAlgebra diag({1, 1});
  CHECK(is_positive_element(AlgebraElement::make(diag, diag.identity())));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK_FALSE(is_positive_element(AlgebraElement::make(diag, d)));

  Rng rng(22);
  const BlockAlgebra a({2, 1});
  for (int t = 0; t < 20; ++t) {
    // x = [x_1 | x_2] with column blocks matching the algebra.
    const ComplexMatrix x = random_complex_matrix(rng, 2, 3);
    const ComplexMatrix g = pinch_matrix(a, x.adjoint() * x);
    CHECK(is_positive_element(AlgebraElement::make(a, g)));
    CHECK(oracle::psd(g, 1e-9));
  }
  ComplexMatrix off = ComplexMatrix::Zero(3, 3);
  off(0, 2) = 1.0;
  CHECK_THROWS_AS(AlgebraElement::make(a, off), ValidationError);
}
