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

#include <random>
#include <vector>

#include "semiphi/extension.hpp"

namespace semiphi {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_complex_matrix(Rng& rng, Eigen::Index rows,
                                    Eigen::Index cols);
/// Haar-like unitary from the QR factorisation of a Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, Eigen::Index n);
/// First `cols` columns of a random unitary.
ComplexMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Random m x q Kraus operators; count distinct generic operators give a
/// Choi matrix of rank `count` when count <= q m.
std::vector<ComplexMatrix> random_kraus(Rng& rng, Eigen::Index m,
                                        Eigen::Index q, int count);

/// A submodule F of E together with a CP map and a module map on F.
struct ExtensionFixture {
  ConcreteModule e;
  ConcreteModule f;
  CPMap phi;
  std::vector<ComplexMatrix> kraus;
  ModuleMap map;
};

/// The column model: E = {[T; S]} in M_{2n x n} over M_n,
/// F = {[T; 0]}, phi = id and Phi([T; 0]) = T.  E's basis lists [E_ij; 0]
/// first, then [0; E_ij].
ExtensionFixture example_2_1(Eigen::Index n);

/// E = M_n (+) M_n as a module over itself (2n x 2n block diagonal),
/// F = M_n (+) 0, phi(a (+) b) = a and Phi(x (+) 0) = x.  The obstruction
/// vanishes and Phi (+) 0 is the unique phi-map extension.
ExtensionFixture compacts_2_6(Eigen::Index n);

struct FixtureShape {
  Eigen::Index max_ambient = 4;
  std::size_t max_dim = 4;
  Eigen::Index max_row_dim = 3;
  Eigen::Index max_target = 3;
  Eigen::Index max_codomain = 3;
};

/// Random block module E = (+)_b {X : columns in block b, range in R_b}
/// with mutually orthogonal row spaces R_b, a submodule F built from
/// S_b in R_b, a random CP map phi and Phi = W o Phi_phi on F with a random
/// W of norm `contraction_norm`.  Phi is completely semi-phi exactly when
/// contraction_norm <= 1 (or Phi_phi vanishes on F).
ExtensionFixture random_extension_fixture(Rng& rng, double contraction_norm,
                                          const FixtureShape& shape = {});

/// Like random_extension_fixture, but phi annihilates every block where
/// S_b != R_b, so phi(<F^perp, E>) = 0, and Phi = U o Phi_phi with a
/// unitary U, making Phi a non-degenerate phi-map.
ExtensionFixture random_vanishing_fixture(Rng& rng,
                                          const FixtureShape& shape = {});

/// A containment (G, C) in (F, B) with a morphism into (M_{n x 1}, C).
struct ContainmentFixture {
  ConcreteModule g;
  ConcreteModule f;
  ModuleEmbedding embedding;
  CPMap phi;
  ModuleMap map;
};

ContainmentFixture random_containment_fixture(Rng& rng, Eigen::Index n);

}  // namespace semiphi
