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
#include <span>
#include <vector>

#include "semiphi/algebra.hpp"

namespace semiphi {

/// A linear map phi from a BlockAlgebra A (inside M_q) into M_m, stored as
/// its values on the matrix units of A in BlockAlgebra::units() order.
///
/// Off the algebra, phi is extended as phi o pinch; Choi matrix, Kraus
/// operators and dilation all refer to that extension, whose restriction to
/// A is phi itself.
class CPMap {
 public:
  using Function = std::function<ComplexMatrix(const ComplexMatrix&)>;

  CPMap(BlockAlgebra domain, Eigen::Index target_dim,
        std::vector<ComplexMatrix> values_on_units);

  /// Tabulates f on the matrix units.
  static CPMap from_function(const BlockAlgebra& domain,
                             Eigen::Index target_dim, const Function& f);
  /// a -> sum_t K_t a K_t*, each K_t of shape m x q.
  static CPMap from_kraus(const BlockAlgebra& domain,
                          std::span<const ComplexMatrix> kraus);
  static CPMap identity(const BlockAlgebra& algebra);
  /// a -> tr(a), into M_1.
  static CPMap trace(const BlockAlgebra& algebra);
  /// a -> a^T; positive but not completely positive on M_n, n >= 2.
  static CPMap transpose(const BlockAlgebra& algebra);
  static CPMap zero(const BlockAlgebra& algebra, Eigen::Index target_dim);

  const BlockAlgebra& domain() const { return domain_; }
  Eigen::Index target_dim() const { return target_dim_; }
  const std::vector<ComplexMatrix>& values() const { return values_; }

  /// phi(a) for a in the algebra.  Throws ValidationError if a has
  /// off-block mass.
  ComplexMatrix apply(const ComplexMatrix& a,
                      const ToleranceProfile& tol = {}) const;
  ComplexMatrix apply(const AlgebraElement& a) const;
  /// phi(pinch(a)) for arbitrary a in M_q.
  ComplexMatrix apply_extended(const ComplexMatrix& a) const;
  /// phi_n: entrywise application to an n x n block matrix with q x q
  /// blocks, each of which must lie in the algebra.
  ComplexMatrix apply_n(Eigen::Index n, const ComplexMatrix& blocks,
                        const ToleranceProfile& tol = {}) const;

  /// phi(E_ji) = phi(E_ij)* for every unit pair.
  bool is_hermitian_preserving(const ToleranceProfile& tol = {}) const;
  bool is_unital(const ToleranceProfile& tol = {}) const;

 private:
  BlockAlgebra domain_;
  Eigen::Index target_dim_;
  std::vector<ComplexMatrix> values_;
};

/// outer o inner.  inner's values must lie in outer's domain algebra.
CPMap compose(const CPMap& outer, const CPMap& inner,
              const ToleranceProfile& tol = {});

/// J = sum_{ij} E_ij (x) phi(pinch(E_ij)), a (q m) x (q m) matrix.  Throws
/// ValidationError if phi is not hermitian preserving.
ComplexMatrix choi(const CPMap& phi, const ToleranceProfile& tol = {});

struct CpReport {
  bool completely_positive = false;
  /// Smallest Choi eigenvalue.
  double margin = 0.0;
  PsdReport choi_psd;

  explicit operator bool() const { return completely_positive; }
};

CpReport is_completely_positive(const CPMap& phi,
                                const ToleranceProfile& tol = {});

/// Kraus operators (m x q) from the scaled Choi eigenvectors whose
/// eigenvalues exceed the tolerance; their number is the Choi rank.
/// Throws NotCompletelyPositive.
std::vector<ComplexMatrix> kraus(const CPMap& phi,
                                 const ToleranceProfile& tol = {});

/// phi(a) = V* (a (x) I_r) V with V h = sum_t (K_t* h) (x) e_t.
struct StinespringDilation {
  std::vector<ComplexMatrix> kraus;
  Eigen::Index rank = 0;
  /// (q r) x m.
  ComplexMatrix isometry;
  /// Largest |phi(u) - V* rho(u) V| over the matrix units.
  double reconstruction_error = 0.0;

  /// rho(a) = a (x) I_r.
  ComplexMatrix represent(const ComplexMatrix& a) const;
  ComplexMatrix compress(const ComplexMatrix& a) const;
};

/// Builds and certifies the dilation.  Throws NotCompletelyPositive, or
/// NumericalError if the reconstruction identity fails beyond 1e-8 relative.
StinespringDilation stinespring(const CPMap& phi,
                                const ToleranceProfile& tol = {});

}  // namespace semiphi
