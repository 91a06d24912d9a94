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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "semiphi/extension.hpp"

namespace semiphi {

/// The four structural parts of a 2 x 2 block operator matrix
/// [[scalar, corner], [adjoint corner, diagonal]].
enum class CornerPart { kScalar, kCorner, kAdjointCorner, kDiagonal };

std::string_view to_string(CornerPart part);

/// Row/column partition (top | bottom) of a square block matrix.
struct CornerLayout {
  Eigen::Index top = 0;
  Eigen::Index bottom = 0;

  Eigen::Index size() const { return top + bottom; }
  /// The part that entry (row, col) belongs to.
  CornerPart part_of(Eigen::Index row, Eigen::Index col) const;
};

/// The operator system S_A(E) = [[C I_p, E], [E*, A]] inside M_{p+q}.
/// Basis order: the scalar element, E in the corner, E* in the adjoint
/// corner (same order as E's basis), then the matrix units of A.
class PaulsenSystem {
 public:
  struct Element {
    CornerPart part;
    std::size_t index;  // position inside E's basis or A's units
    ComplexMatrix matrix;
  };

  explicit PaulsenSystem(ConcreteModule module);

  const ConcreteModule& module() const { return module_; }
  const BlockAlgebra& algebra() const { return module_.algebra(); }
  CornerLayout layout() const { return {module_.row_dim(), module_.col_dim()}; }
  const std::vector<Element>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  SpanCoordinates coordinates(const ComplexMatrix& m,
                              const ToleranceProfile& tol = {}) const;
  bool contains(const ComplexMatrix& m, const ToleranceProfile& tol = {}) const;

 private:
  ConcreteModule module_;
  std::vector<Element> basis_;
  ComplexMatrix flat_;
};

PaulsenSystem build_system(const ConcreteModule& e);

/// A linear map between Paulsen systems given by its values on the domain
/// basis.  Maps produced by block_map also carry their corner data (Phi,
/// phi), which is what is_cp_system_map needs.
struct SystemMap {
  PaulsenSystem domain;
  PaulsenSystem codomain;
  std::vector<ComplexMatrix> action;
  std::optional<ModuleMap> corner_map;
  std::optional<CPMap> diagonal_map;

  ComplexMatrix apply(const ComplexMatrix& m,
                      const ToleranceProfile& tol = {}) const;
  /// Entrywise application to an n x n block matrix over the domain.
  ComplexMatrix apply_n(Eigen::Index n, const ComplexMatrix& blocks,
                        const ToleranceProfile& tol = {}) const;
  bool is_unital(const ToleranceProfile& tol = {}) const;
};

/// The codomain system used when none is declared: B(H1, H2) as a module
/// over B(H1), i.e. all h2 x h1 matrices over the full algebra M_{h1}.
PaulsenSystem operator_codomain(Eigen::Index h1_dim, Eigen::Index h2_dim);

/// [[lambda, x], [y*, a]] -> [[lambda, Phi(x)], [Phi(y)*, phi(a)]].  Throws
/// ValidationError if a value of Phi or phi is outside the codomain system.
SystemMap block_map(const ModuleMap& map, const CPMap& phi,
                    const ToleranceProfile& tol = {});
SystemMap block_map(const ModuleMap& map, const CPMap& phi,
                    const PaulsenSystem& codomain,
                    const ToleranceProfile& tol = {});

/// outer o inner on basis values.
SystemMap compose(const SystemMap& outer, const SystemMap& inner,
                  const ToleranceProfile& tol = {});

struct SamplingOptions {
  int max_level = 3;
  int samples_per_level = 50;
  std::uint64_t seed = 0x5eed;
};

struct SystemCpReport {
  bool completely_positive = false;
  /// Semi-phi margin of the corner data (smallest eigenvalue of
  /// g_phi - g_map).
  double margin = 0.0;
  int samples_checked = 0;
  /// Smallest eigenvalue / scale over all sampled images.
  double worst_sample_ratio = 0.0;
  /// False if a sampled PSD element was mapped to a non-PSD matrix although
  /// the verdict is true.
  bool sampling_consistent = true;

  explicit operator bool() const { return completely_positive; }
};

/// CP decision for corner-structured maps: the block map is CP exactly when
/// Phi is completely semi-phi.  On a true verdict, random PSD elements of
/// M_n(S) (n <= max_level) are pushed through the map as a falsification
/// layer.  Throws ValidationError if the map carries no corner data.
SystemCpReport is_cp_system_map(const SystemMap& map,
                                const ToleranceProfile& tol = {},
                                const SamplingOptions& sampling = {});

/// A random PSD element of M_n(S): hermitian part of a random element,
/// shifted by a multiple of the identity onto the PSD cone.
ComplexMatrix random_psd_element(const PaulsenSystem& system, Eigen::Index n,
                                 std::uint64_t seed);

struct CornerViolation {
  std::size_t input_index;
  CornerPart input_part;
  /// 0-based entry of the output that leaves the allowed parts.
  Eigen::Index row;
  Eigen::Index col;
  CornerPart output_part;
  double magnitude;
};

struct CornerReport {
  bool preserving = true;
  std::vector<CornerViolation> violations;

  explicit operator bool() const { return preserving; }
};

/// Every input must have its image inside the counterparts of the parts the
/// input occupies.  inputs[i] is laid out by layout_in, outputs[i] by
/// layout_out.
CornerReport is_corner_preserving(std::span<const ComplexMatrix> inputs,
                                  std::span<const ComplexMatrix> outputs,
                                  const CornerLayout& layout_in,
                                  const CornerLayout& layout_out,
                                  const ToleranceProfile& tol = {});
CornerReport is_corner_preserving(const SystemMap& map,
                                  const ToleranceProfile& tol = {});

/// The unital CP map M_2(M_h) -> M_4(M_h)
///   [[T1, T2], [T3, T4]] -> [[T1, 0, 0, T2], [0, T4, 0, 0],
///                            [0, 0, T1, 0], [T3, 0, 0, T4]],
/// which is not corner preserving.
CPMap example_3_4_map(Eigen::Index h_dim);

/// Result of extending a morphism (Phi, phi) : (G, C) -> target along a
/// containment (G, C) in (F, B).
struct InjectivityResult {
  CPMap psi;
  ExtensionResult extension;
  /// max |Psi(i(g)) - Phi(g)| over the basis of G.
  double restriction_error = 0.0;
  /// max |psi(j(c)) - phi(c)| over the matrix units of C.
  double psi_extension_error = 0.0;
  bool psi_completely_positive = false;
  bool success = false;
};

/// psi = phi o pinch_C o (J . J*) extends phi to B; Psi is produced by the
/// extension engine from Phi transported along the embedding.  Throws
/// PreconditionError when the containment or the morphism conditions fail.
InjectivityResult injectivity_demo(const ConcreteModule& g,
                                   const ConcreteModule& f,
                                   const ModuleEmbedding& embedding,
                                   const ModuleMap& map, const CPMap& phi,
                                   const ToleranceProfile& tol = {});

}  // namespace semiphi
