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

#include "semiphi/algebra.hpp"

#include <string>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

void require_ambient(const BlockAlgebra& algebra, const ComplexMatrix& m,
                     const char* op) {
  const Eigen::Index q = algebra.ambient_dim();
  if (m.rows() != q || m.cols() != q) {
    throw ShapeError(std::string(op) + ": expected " + std::to_string(q) +
                     "x" + std::to_string(q) + " matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

BlockAlgebra::BlockAlgebra(std::vector<Eigen::Index> blocks)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("BlockAlgebra: no blocks");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Eigen::Index n = blocks_[b];
    if (n < 1) throw ValidationError("BlockAlgebra: block size must be >= 1");
    offsets_.push_back(ambient_);
    for (Eigen::Index i = 0; i < n; ++i) owner_.push_back(b);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        units_.push_back({ambient_ + i, ambient_ + j, b});
      }
    }
    ambient_ += n;
  }
}

ComplexMatrix BlockAlgebra::unit_matrix(std::size_t u) const {
  return matrix_unit(ambient_, units_.at(u).row, units_.at(u).col);
}

std::optional<std::size_t> BlockAlgebra::unit_index(Eigen::Index row,
                                                    Eigen::Index col) const {
  if (row < 0 || col < 0 || row >= ambient_ || col >= ambient_) {
    return std::nullopt;
  }
  const std::size_t b = owner_[row];
  if (owner_[col] != b) return std::nullopt;
  std::size_t index = 0;
  for (std::size_t k = 0; k < b; ++k) {
    index += static_cast<std::size_t>(blocks_[k] * blocks_[k]);
  }
  const Eigen::Index off = offsets_[b];
  index += static_cast<std::size_t>((row - off) * blocks_[b] + (col - off));
  return index;
}

AlgebraElement AlgebraElement::make(const BlockAlgebra& algebra,
                                    ComplexMatrix value,
                                    const ToleranceProfile& tol) {
  if (!contains(algebra, value, tol)) {
    throw ValidationError("AlgebraElement: matrix has off-block entries");
  }
  return {algebra, std::move(value)};
}

ComplexMatrix pinch_matrix(const BlockAlgebra& algebra,
                           const ComplexMatrix& m) {
  require_ambient(algebra, m, "pinch");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (std::size_t b = 0; b < algebra.blocks().size(); ++b) {
    const Eigen::Index off = algebra.block_offset(b);
    const Eigen::Index n = algebra.blocks()[b];
    out.block(off, off, n, n) = m.block(off, off, n, n);
  }
  return out;
}

AlgebraElement pinch(const BlockAlgebra& algebra, const ComplexMatrix& m) {
  return {algebra, pinch_matrix(algebra, m)};
}

bool contains(const BlockAlgebra& algebra, const ComplexMatrix& m,
              const ToleranceProfile& tol) {
  require_ambient(algebra, m, "contains");
  require_finite(m, "contains");
  const double off_block = (m - pinch_matrix(algebra, m)).norm();
  return off_block <= tol.threshold(m.norm());
}

bool is_positive_element(const AlgebraElement& a, const ToleranceProfile& tol) {
  return is_psd(a.value, tol).psd;
}

}  // namespace semiphi
