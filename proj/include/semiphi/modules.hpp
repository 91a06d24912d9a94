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

#include <memory>
#include <string>
#include <vector>

#include "semiphi/algebra.hpp"

namespace semiphi {

/// A right Hilbert module over a BlockAlgebra A (inside M_q), realised as the
/// span of finitely many p x q matrices with inner product <x, y> = x* y and
/// right action by matrix multiplication.
///
/// The constructor only checks shapes; the module axioms are checked by
/// validate_module.  The empty basis represents the zero module.  Copies
/// share the underlying (immutable) basis.
class ConcreteModule {
 public:
  ConcreteModule(BlockAlgebra algebra, Eigen::Index row_dim,
                 std::vector<ComplexMatrix> basis);

  static ConcreteModule zero(const BlockAlgebra& algebra,
                             Eigen::Index row_dim) {
    return ConcreteModule(algebra, row_dim, {});
  }

  const BlockAlgebra& algebra() const { return data_->algebra; }
  Eigen::Index row_dim() const { return data_->row_dim; }
  Eigen::Index col_dim() const { return data_->algebra.ambient_dim(); }
  std::size_t dimension() const { return data_->basis.size(); }
  const std::vector<ComplexMatrix>& basis() const { return data_->basis; }

  /// (p*q) x dim matrix whose columns are the flattened basis elements.
  const ComplexMatrix& basis_matrix() const { return data_->flat; }

  /// Coordinates of a p x q matrix with respect to the basis.
  SpanCoordinates coordinates(const ComplexMatrix& x,
                              const ToleranceProfile& tol = {}) const;
  /// True iff x lies in the span of the basis.
  bool spans(const ComplexMatrix& x, const ToleranceProfile& tol = {}) const;

 private:
  struct Data {
    BlockAlgebra algebra;
    Eigen::Index row_dim;
    std::vector<ComplexMatrix> basis;
    ComplexMatrix flat;
  };
  std::shared_ptr<const Data> data_;
};

/// An element of a ConcreteModule; `make` checks membership.
struct ModuleElement {
  ConcreteModule parent;
  ComplexMatrix value;

  static ModuleElement make(const ConcreteModule& module, ComplexMatrix value,
                            const ToleranceProfile& tol = {});
};

struct ModuleValidation {
  bool inner_products_in_algebra = true;
  bool closed_under_action = true;
  bool independent = true;
  std::vector<std::string> violations;

  bool valid() const {
    return inner_products_in_algebra && closed_under_action && independent;
  }
  explicit operator bool() const { return valid(); }
};

/// Checks the module axioms on the basis: x* y in A, x a in span for every
/// matrix unit a, and linear independence.
ModuleValidation validate_module(const ConcreteModule& e,
                                 const ToleranceProfile& tol = {});

/// <x, y> = x* y.  Throws ValidationError if the product escapes the
/// algebra (a broken module).
AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y,
                             const ToleranceProfile& tol = {});

/// span(F) is contained in span(E) and F is a valid module.  Throws
/// ShapeError when the algebras or row dimensions differ.
bool is_submodule(const ConcreteModule& f, const ConcreteModule& e,
                  const ToleranceProfile& tol = {});

/// {x in E : <x, f> = 0 for all f in F}, computed as the null space of the
/// linear map c -> (f* sum_b c_b e_b)_f.
ConcreteModule orthogonal_complement(const ConcreteModule& f,
                                     const ConcreteModule& e,
                                     const ToleranceProfile& tol = {});

/// The inner products x_i* x_j span the whole algebra.  The zero module is
/// never full.
bool is_full(const ConcreteModule& e, const ToleranceProfile& tol = {});

/// Internal direct sum F + G inside a common p x q space.  Throws
/// ValidationError if the spans intersect non-trivially.
ConcreteModule direct_sum(const ConcreteModule& f, const ConcreteModule& g,
                          const ToleranceProfile& tol = {});

/// External direct sum: elements [x; 0] and [0; y] in (p_F + p_G) x q.
ConcreteModule external_direct_sum(const ConcreteModule& f,
                                   const ConcreteModule& g);

/// Declared embedding of a pair (E, A) into (F, B).  Block b of A is placed
/// at ambient offset block_offsets[b] of B and must sit inside one block of
/// B.  Module elements map as x -> R x J where J is the induced q_A x q_B
/// coordinate injection and R = row_map (p_F x p_E; identity if empty).
struct ModuleEmbedding {
  std::vector<Eigen::Index> block_offsets;
  ComplexMatrix row_map;

  /// Identity embedding of a pair into a pair with the same shapes.
  static ModuleEmbedding identity(const BlockAlgebra& algebra);

  /// J as a q_A x q_B matrix; throws ValidationError if the declaration is
  /// not block aligned with respect to `target`.
  ComplexMatrix column_injection(const BlockAlgebra& source,
                                 const BlockAlgebra& target) const;
  ComplexMatrix rows(Eigen::Index source_rows, Eigen::Index target_rows) const;
};

/// Containment (E, A) in (F, B): A embeds as a subalgebra, the image of E
/// lies in F, and <i(x), i(y)>_F = j(<x, y>_E) on the basis of E.  Throws
/// ValidationError on an incompatible embedding declaration.
bool is_contained_pair(const ConcreteModule& e, const ConcreteModule& f,
                       const ModuleEmbedding& embedding,
                       const ToleranceProfile& tol = {});

}  // namespace semiphi
