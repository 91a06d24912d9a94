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

double reconstruction_error(const CPMap& phi,
                            const std::vector<ComplexMatrix>& kraus) {
  double err = 0.0;
  for (std::size_t u = 0; u < phi.domain().units().size(); ++u) {
    const ComplexMatrix e = phi.domain().unit_matrix(u);
    err = std::max(err, (oracle::apply_kraus(kraus, e) - phi.values()[u]).norm());
  }
  return err;
}

BlockAlgebra random_algebra(Rng& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> size(1, 2);
  std::vector<Eigen::Index> blocks(static_cast<std::size_t>(count(rng)));
  for (auto& b : blocks) b = size(rng);
  return BlockAlgebra(blocks);
}

}  // namespace

TEST_CASE("Choi matrix examples", "[cpmaps]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  const ComplexMatrix j = choi(CPMap::identity(m2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK((j - expected).norm() == 0.0);
  CHECK(numerical_rank(j) == 1);

  CHECK((choi(CPMap::trace(m2)) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

  const ComplexMatrix pinch_choi = choi(CPMap::identity(BlockAlgebra({1, 1})));
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 1.0;
  CHECK((pinch_choi - diag).norm() == 0.0);

  // Against the definition through an explicit function on M_q.
  Rng rng(41);
  const auto k = random_kraus(rng, 2, 3, 2);
  const CPMap phi = CPMap::from_kraus(BlockAlgebra::full(3), k);
  const ComplexMatrix def = oracle::choi_by_definition(
      [&](const ComplexMatrix& a) { return oracle::apply_kraus(k, a); }, 3, 2);
  CHECK((choi(phi) - def).norm() < 1e-12);
}

TEST_CASE("complete positivity examples", "[cpmaps]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  CHECK(is_completely_positive(CPMap::identity(m2)).completely_positive);

  const auto t = is_completely_positive(CPMap::transpose(m2));
  CHECK_FALSE(t.completely_positive);
  CHECK(t.margin == Approx(-1.0).margin(1e-9));
  const ComplexMatrix swap = oracle::choi_by_definition(
      [](const ComplexMatrix& a) { return ComplexMatrix(a.transpose()); }, 2, 2);
  CHECK(oracle::min_eigenvalue(swap) == Approx(-1.0).margin(1e-9));

  Rng rng(42);
  const ComplexMatrix v = random_isometry(rng, 6, 2);
  const CPMap dil = CPMap::from_function(
      BlockAlgebra::full(3), 2, [&](const ComplexMatrix& a) -> ComplexMatrix {
        return v.adjoint() * kron(a, ComplexMatrix::Identity(2, 2)) * v;
      });
  CHECK(is_completely_positive(dil).completely_positive);

  // Non-hermitian-preserving data is invalid input, not a verdict.
  std::vector<ComplexMatrix> bad(1, ComplexMatrix::Identity(1, 1));
  bad[0](0, 0) = Complex(0.0, 1.0);
  CHECK_THROWS_AS(choi(CPMap(BlockAlgebra::full(1), 1, bad)), ValidationError);
}

TEST_CASE("CP verdict agrees with the generating construction",
          "[cpmaps][property]") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const BlockAlgebra a = random_algebra(rng);
    std::uniform_int_distribution<int> md(1, 3), cd(1, 3);
    const auto k = random_kraus(rng, md(rng), a.ambient_dim(), cd(rng));
    const CPMap phi = CPMap::from_kraus(a, k);
    CHECK(is_completely_positive(phi).completely_positive);
  }
}

TEST_CASE("CP minus a large transpose multiple is rejected", "[cpmaps][property]") {
  Rng rng(44);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index q = 2 + t % 2;
    const BlockAlgebra a = BlockAlgebra::full(q);
    const auto k = random_kraus(rng, q, q, 2);
    const CPMap phi = CPMap::from_kraus(a, k);
    const CPMap tr = CPMap::transpose(a);
    const double c = 2.0 * choi(phi).norm() + 1.0;
    std::vector<ComplexMatrix> vals;
    for (std::size_t u = 0; u < phi.values().size(); ++u) {
      vals.push_back(phi.values()[u] - c * tr.values()[u]);
    }
    const CPMap mixed(a, q, vals);
    CHECK_FALSE(is_completely_positive(mixed).completely_positive);
    CHECK(oracle::min_eigenvalue(choi(mixed)) < 0.0);
    CHECK_THROWS_AS(kraus(mixed), NotCompletelyPositive);
  }
}

TEST_CASE("Kraus decompositions", "[cpmaps]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  const auto id = kraus(CPMap::identity(m2));
  REQUIRE(id.size() == 1);
  // Equal to I_2 up to a global phase.
  const Complex phase = id[0](0, 0);
  CHECK(std::abs(phase) == Approx(1.0));
  CHECK((id[0] - phase * ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  const CPMap trace = CPMap::trace(m2);
  const auto kt = kraus(trace);
  CHECK(kt.size() == 2);
  CHECK(reconstruction_error(trace, kt) < 1e-12);

  CHECK(kraus(CPMap::zero(m2, 3)).empty());
}

TEST_CASE("Kraus and Stinespring reconstruct random CP maps", "[cpmaps][property]") {
  Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    const BlockAlgebra a = random_algebra(rng);
    std::uniform_int_distribution<int> md(1, 3), cd(1, 3);
    const Eigen::Index m = md(rng);
    const int count = cd(rng);
    const auto gen = random_kraus(rng, m, a.ambient_dim(), count);
    const CPMap phi = CPMap::from_kraus(a, gen);
    const auto k = kraus(phi);
    CHECK(reconstruction_error(phi, k) <= 1e-8);
    const auto d = stinespring(phi);
    CHECK(d.rank == static_cast<Eigen::Index>(k.size()));
    CHECK(d.rank == numerical_rank(choi(phi)));
    double err = 0.0;
    for (std::size_t u = 0; u < a.units().size(); ++u) {
      const ComplexMatrix e = a.unit_matrix(u);
      const ComplexMatrix rebuilt =
          d.isometry.adjoint() * kron(e, ComplexMatrix::Identity(d.rank, d.rank)) *
          d.isometry;
      err = std::max(err, (rebuilt - phi.values()[u]).norm());
    }
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("Stinespring examples", "[cpmaps]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  const auto id = stinespring(CPMap::identity(m2));
  CHECK(id.rank == 1);
  CHECK((id.isometry.adjoint() * id.isometry - ComplexMatrix::Identity(2, 2)).norm() <
        1e-12);
  CHECK((id.represent(ComplexMatrix::Ones(2, 2)) - ComplexMatrix::Ones(2, 2)).norm() ==
        0.0);

  const auto tr = stinespring(CPMap::trace(m2));
  CHECK(tr.rank == 2);
  CHECK(tr.isometry.rows() == 4);
  CHECK(tr.isometry.cols() == 1);
  Rng rng(46);
  const ComplexMatrix a = random_complex_matrix(rng, 2, 2);
  CHECK(std::abs(tr.compress(a)(0, 0) - a.trace()) < 1e-12);
  // The vectorised identity up to phase: |V| has unit entries at e_0(x)e_t.
  CHECK(tr.isometry.norm() == Approx(std::sqrt(2.0)));

  const CPMap pinch_map = CPMap::from_function(
      m2, 2, [&](const ComplexMatrix& x) { return pinch_matrix(BlockAlgebra({1, 1}), x); });
  const auto pd = stinespring(pinch_map);
  CHECK(pd.rank == 2);
  CHECK(reconstruction_error(pinch_map, pd.kraus) < 1e-12);
  for (const auto& k : pd.kraus) CHECK(numerical_rank(k) == 1);

  CHECK_THROWS_AS(stinespring(CPMap::transpose(m2)), NotCompletelyPositive);
}

TEST_CASE("apply and amplification", "[cpmaps]") {
  const BlockAlgebra m2 = BlockAlgebra::full(2);
  Rng rng(47);
  const ComplexMatrix a = random_complex_matrix(rng, 2, 2);
  CHECK((CPMap::identity(m2).apply(a) - a).norm() < 1e-14);
  CHECK(CPMap::trace(m2).apply(matrix_unit(2, 0, 0))(0, 0) == Complex(1.0));
  const ComplexMatrix big = random_complex_matrix(rng, 4, 4);
  CHECK((CPMap::identity(m2).apply_n(2, big) - big).norm() < 1e-14);

  const BlockAlgebra diag({1, 1});
  CHECK_THROWS_AS(CPMap::identity(diag).apply(ComplexMatrix::Ones(2, 2)),
                  ValidationError);
  CHECK((CPMap::identity(diag).apply_extended(ComplexMatrix::Ones(2, 2)) -
         ComplexMatrix::Identity(2, 2))
            .norm() == 0.0);

  const auto k = random_kraus(rng, 2, 2, 2);
  const CPMap phi = CPMap::from_kraus(m2, k);
  CHECK((phi.apply(a) - oracle::apply_kraus(k, a)).norm() < 1e-12);
  CHECK((oracle::apply_by_units(phi, a) - oracle::apply_kraus(k, a)).norm() < 1e-12);

  CHECK(CPMap::identity(m2).is_unital());
  CHECK_FALSE(CPMap::trace(m2).is_unital());
  const CPMap comp = compose(CPMap::trace(m2), phi);
  CHECK(std::abs(comp.apply(a)(0, 0) - oracle::apply_kraus(k, a).trace()) < 1e-12);
}
