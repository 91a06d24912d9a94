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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semiphi/cpmaps.hpp"
#include "semiphi/modules.hpp"

namespace semiphi {

/// A linear map Phi from a ConcreteModule into the operators H1 -> H2
/// (h2_dim x h1_dim matrices), stored by its values on the domain basis.
class ModuleMap {
 public:
  using Function = std::function<ComplexMatrix(const ComplexMatrix&)>;

  ModuleMap(ConcreteModule domain, Eigen::Index h1_dim, Eigen::Index h2_dim,
            std::vector<ComplexMatrix> values);

  static ModuleMap from_function(const ConcreteModule& domain,
                                 Eigen::Index h1_dim, Eigen::Index h2_dim,
                                 const Function& f);
  static ModuleMap zero(const ConcreteModule& domain, Eigen::Index h1_dim,
                        Eigen::Index h2_dim);

  const ConcreteModule& domain() const { return domain_; }
  Eigen::Index h1_dim() const { return h1_dim_; }
  Eigen::Index h2_dim() const { return h2_dim_; }
  const std::vector<ComplexMatrix>& values() const { return values_; }

  /// Phi(x) for x in span(domain), by linearity.  Throws ValidationError if
  /// x is outside the span.
  ComplexMatrix evaluate(const ComplexMatrix& x,
                         const ToleranceProfile& tol = {}) const;

  /// The same map on a module whose span lies inside the domain.
  ModuleMap restrict_to(const ConcreteModule& sub,
                        const ToleranceProfile& tol = {}) const;

 private:
  ConcreteModule domain_;
  Eigen::Index h1_dim_;
  Eigen::Index h2_dim_;
  std::vector<ComplexMatrix> values_;
};

/// outer o inner, with inner's values read as elements of outer's domain.
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner,
                  const ToleranceProfile& tol = {});

struct PhiMapReport {
  bool holds = false;
  /// max |Phi(x_i)* Phi(x_j) - phi(<x_i, x_j>)| over basis pairs.
  double worst_deviation = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  /// Largest norm among the compared matrices.
  double scale = 0.0;
  double threshold = 0.0;

  explicit operator bool() const { return holds; }
};

/// <Phi(x), Phi(y)> = phi(<x, y>) on every basis pair.
PhiMapReport is_phi_map(const ModuleMap& map, const CPMap& phi,
                        const ToleranceProfile& tol = {});

/// The vectors Phi(x_i) h span H2.
bool is_nondegenerate(const ModuleMap& map, const ToleranceProfile& tol = {});

/// The two N x N forms, N = dim(E) * m, indexed by (basis k, vector l)
/// as k * m + l:
///   g_phi[(k,l),(k',l')] = <e_l, phi(<x_k, x_k'>) e_l'>
///   g_map[(k,l),(k',l')] = <Phi(x_k) e_l, Phi(x_k') e_l'>
struct GramPair {
  ComplexMatrix g_phi;
  ComplexMatrix g_map;
};

GramPair gram_pair(const ModuleMap& map, const CPMap& phi);

struct SemiPhiReport {
  bool holds = false;
  /// Smallest eigenvalue of g_phi - g_map.
  double margin = 0.0;
  GramPair gram;
  PsdReport psd;

  explicit operator bool() const { return holds; }
};

/// Complete semi-phi property, decided by the single comparison
/// g_map <= g_phi.  For linear Phi this is equivalent to the inequality at
/// every matrix level: a level-n argument splits into n row families, each
/// of which is a vector of the N-dimensional form.
SemiPhiReport is_completely_semi_phi(const ModuleMap& map, const CPMap& phi,
                                     const ToleranceProfile& tol = {});

/// A family (x_i, h_i) with |sum Phi(x_i) h_i|^2 > sum <h_i, phi(<x_i, x_j>) h_j>.
struct SemiPhiWitness {
  std::vector<ComplexMatrix> elements;
  std::vector<ComplexVector> vectors;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// Recomputes lhs, rhs and gap of a family directly from Phi and phi,
/// without the Gram matrices.
SemiPhiWitness evaluate_witness(const ModuleMap& map, const CPMap& phi,
                                std::vector<ComplexMatrix> elements,
                                std::vector<ComplexVector> vectors,
                                const ToleranceProfile& tol = {});

/// Builds a refuting family from the most negative eigenvector of
/// g_phi - g_map and re-evaluates it.  Returns nullopt when Phi is
/// completely semi-phi.
std::optional<SemiPhiWitness> semiphi_witness(const ModuleMap& map,
                                              const CPMap& phi,
                                              const ToleranceProfile& tol = {});

struct KsgnsResult {
  /// Phi_phi : E -> B(C^m, H_phi), a non-degenerate phi-map.
  ModuleMap map;
  /// Columns: orthonormal basis of H_phi inside C^p (x) C^r.
  ComplexMatrix subspace_onb;
  StinespringDilation dilation;
};

/// Phi_phi(x) = Q* (x (x) I_r) V where Q spans {(x (x) I_r) V h}.  The
/// phi-map identity is certified before returning.  Throws
/// NotCompletelyPositive.
KsgnsResult ksgns(const CPMap& phi, const ConcreteModule& e,
                  const ToleranceProfile& tol = {});

struct ObstructionReport {
  bool vanishes = true;
  /// max |phi(<z, x>)| over z in a basis of F^perp, x in the basis of E.
  double norm = 0.0;
  double threshold = 0.0;
  ConcreteModule complement;
};

/// phi(<F^perp, E>) = 0 test.  Requires F to be a submodule of E.
ObstructionReport phi_extension_obstruction(const CPMap& phi,
                                            const ConcreteModule& f,
                                            const ConcreteModule& e,
                                            const ToleranceProfile& tol = {});

struct ExtensionReport {
  bool certified = false;
  bool empty_submodule = false;
  bool zero_phi = false;
  double input_margin = 0.0;
  bool input_is_phi_map = false;
  double lsq_residual = 0.0;
  double contraction_norm = 0.0;
  double restriction_error = 0.0;
  bool extension_semi_phi = false;
  double extension_margin = 0.0;
  bool obstruction_vanishes = false;
  double obstruction_norm = 0.0;
  /// Set when the input is a phi-map and the obstruction vanishes; then
  /// Phi'(F^perp) = 0 and the two inner-product identities on E x (F + F^perp)
  /// are checked.
  bool parts_checked = false;
  double part_i_error = 0.0;
  double part_ii_error = 0.0;
  bool part_i_holds = false;
  bool part_ii_holds = false;
  std::vector<std::string> notes;
};

/// Everything the extension engine built, with its verification report.
struct ExtensionResult {
  ModuleMap original;
  ConcreteModule ambient;
  ConcreteModule complement;
  ModuleMap phi_prime;
  ModuleMap ksgns_map;
  /// Q: orthonormal basis of H_phi.
  ComplexMatrix subspace_onb;
  /// P on H_phi: projection onto [Phi_phi(F) H1].
  ComplexMatrix projection;
  /// S0: [Phi_phi(F) H1] -> H2, extended by zero.
  ComplexMatrix contraction;
  /// S = S0 P.
  ComplexMatrix composite;
  StinespringDilation dilation;
  ExtensionReport report;
};

struct ExtendOptions {
  /// Require F to be a submodule of E.  Off only for containment
  /// extensions where F is a module over a subalgebra and merely a
  /// subspace of E.
  bool require_submodule = true;
};

/// Extends a completely semi-phi map Phi on F to Phi' = S0 P Phi_phi on E.
/// Throws PreconditionError if Phi is not completely semi-phi on F or F is
/// not a submodule, and NumericalError when a certificate fails.
ExtensionResult extend_semi_phi(const ModuleMap& map, const ConcreteModule& e,
                                const CPMap& phi,
                                const ToleranceProfile& tol = {},
                                const ExtendOptions& options = {});

struct CompareReport {
  bool equal = false;
  double max_deviation = 0.0;
  double threshold = 0.0;

  explicit operator bool() const { return equal; }
};

/// Uniqueness check: Gamma (a phi-map on E extending the non-degenerate
/// phi-map Phi) must coincide with the engine's Phi'.  Unverified
/// preconditions throw PreconditionError rather than returning false.
CompareReport compare_extensions(const ModuleMap& gamma,
                                 const ExtensionResult& result,
                                 const CPMap& phi, const ConcreteModule& f,
                                 const ToleranceProfile& tol = {});

/// Phi (+) 0 along E = F (+) F^perp, for a phi-map Phi when the obstruction
/// vanishes.  Certified to be a phi-map and to agree with the engine
/// output.  Throws ObstructionError when phi(<F^perp, E>) != 0.
ModuleMap canonical_compacts_extension(const ModuleMap& map,
                                       const ConcreteModule& e,
                                       const CPMap& phi,
                                       const ToleranceProfile& tol = {});

}  // namespace semiphi
