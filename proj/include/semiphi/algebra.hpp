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

#include <optional>
#include <vector>

#include "semiphi/numerics.hpp"

namespace semiphi {

/// A finite-dimensional C*-algebra M_{n_1} (+) ... (+) M_{n_b}, realised as
/// the block-diagonal matrices inside M_q, q = n_1 + ... + n_b.  The identity
/// is I_q.
///
/// Matrix units are enumerated block-major, then row-major inside each
/// block; every per-unit table in the library (CP map values, Choi
/// assembly, JSON "values_on_units") follows this order.
class BlockAlgebra {
 public:
  struct MatrixUnit {
    Eigen::Index row;  // ambient row index
    Eigen::Index col;  // ambient column index
    std::size_t block;
  };

  /// Throws ValidationError on an empty block list or a zero-sized block.
  explicit BlockAlgebra(std::vector<Eigen::Index> blocks);

  /// The full matrix algebra M_n.
  static BlockAlgebra full(Eigen::Index n) { return BlockAlgebra({n}); }

  const std::vector<Eigen::Index>& blocks() const { return blocks_; }
  Eigen::Index ambient_dim() const { return ambient_; }
  /// Vector-space dimension, sum of n_i^2.
  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(units_.size());
  }
  Eigen::Index block_offset(std::size_t b) const { return offsets_[b]; }
  /// Index of the block containing ambient coordinate i.
  std::size_t block_of(Eigen::Index i) const { return owner_[i]; }

  const std::vector<MatrixUnit>& units() const { return units_; }
  ComplexMatrix unit_matrix(std::size_t u) const;
  /// Position of E_{row,col} in units(), or nullopt if off-block.
  std::optional<std::size_t> unit_index(Eigen::Index row,
                                        Eigen::Index col) const;

  ComplexMatrix identity() const {
    return ComplexMatrix::Identity(ambient_, ambient_);
  }

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<Eigen::Index> blocks_;
  std::vector<Eigen::Index> offsets_;
  std::vector<std::size_t> owner_;
  std::vector<MatrixUnit> units_;
  Eigen::Index ambient_ = 0;
};

/// An element of a BlockAlgebra.  Construct through `make`, which rejects
/// matrices with off-block mass.
struct AlgebraElement {
  BlockAlgebra parent;
  ComplexMatrix value;

  static AlgebraElement make(const BlockAlgebra& algebra, ComplexMatrix value,
                             const ToleranceProfile& tol = {});
};

/// True iff the off-block part of m is zero at the scale of |m|.
bool contains(const BlockAlgebra& algebra, const ComplexMatrix& m,
              const ToleranceProfile& tol = {});

/// Conditional expectation M_q -> A: zeroes every off-block entry.  Unital,
/// positive and idempotent.
AlgebraElement pinch(const BlockAlgebra& algebra, const ComplexMatrix& m);

/// Same as pinch but returns the bare matrix.
ComplexMatrix pinch_matrix(const BlockAlgebra& algebra, const ComplexMatrix& m);

bool is_positive_element(const AlgebraElement& a,
                         const ToleranceProfile& tol = {});

}  // namespace semiphi
