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

#include "semiphi/modules.hpp"

#include <algorithm>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

void require_compatible(const ConcreteModule& f, const ConcreteModule& e,
                        const char* op) {
  if (!(f.algebra() == e.algebra())) {
    throw ShapeError(std::string(op) + ": modules over different algebras");
  }
  if (f.row_dim() != e.row_dim()) {
    throw ShapeError(std::string(op) + ": row dimensions differ");
  }
}

double max_basis_norm(const ConcreteModule& e) {
  double s = 0.0;
  for (const auto& x : e.basis()) s = std::max(s, x.norm());
  return s;
}

}  // namespace

ConcreteModule::ConcreteModule(BlockAlgebra algebra, Eigen::Index row_dim,
                               std::vector<ComplexMatrix> basis) {
  if (row_dim < 1) throw ValidationError("ConcreteModule: row_dim must be >= 1");
  const Eigen::Index q = algebra.ambient_dim();
  ComplexMatrix flat(row_dim * q, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].rows() != row_dim || basis[i].cols() != q) {
      throw ShapeError("ConcreteModule: basis element " + std::to_string(i) +
                       " is " + std::to_string(basis[i].rows()) + "x" +
                       std::to_string(basis[i].cols()) + ", expected " +
                       std::to_string(row_dim) + "x" + std::to_string(q));
    }
    require_finite(basis[i], "ConcreteModule basis");
    flat.col(static_cast<Eigen::Index>(i)) = flatten(basis[i]);
  }
  data_ = std::make_shared<const Data>(
      Data{std::move(algebra), row_dim, std::move(basis), std::move(flat)});
}

SpanCoordinates ConcreteModule::coordinates(const ComplexMatrix& x,
                                            const ToleranceProfile& tol) const {
  if (x.rows() != row_dim() || x.cols() != col_dim()) {
    throw ShapeError("ConcreteModule::coordinates: shape mismatch");
  }
  return span_coordinates(basis_matrix(), flatten(x), tol);
}

bool ConcreteModule::spans(const ComplexMatrix& x,
                           const ToleranceProfile& tol) const {
  return coordinates(x, tol).residual <= tol.threshold(x.norm());
}

ModuleElement ModuleElement::make(const ConcreteModule& module,
                                  ComplexMatrix value,
                                  const ToleranceProfile& tol) {
  if (!module.spans(value, tol)) {
    throw ValidationError("ModuleElement: matrix is not in the module span");
  }
  return {module, std::move(value)};
}

ModuleValidation validate_module(const ConcreteModule& e,
                                 const ToleranceProfile& tol) {
  ModuleValidation report;
  const auto& basis = e.basis();
  const BlockAlgebra& algebra = e.algebra();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (!contains(algebra, basis[i].adjoint() * basis[j], tol)) {
        report.inner_products_in_algebra = false;
        report.violations.push_back("<x" + std::to_string(i) + ", x" +
                                    std::to_string(j) +
                                    "> is not in the algebra");
      }
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t u = 0; u < algebra.units().size(); ++u) {
      const auto& unit = algebra.units()[u];
      ComplexMatrix xa = ComplexMatrix::Zero(e.row_dim(), e.col_dim());
      xa.col(unit.col) = basis[i].col(unit.row);
      if (!e.spans(xa, tol)) {
        report.closed_under_action = false;
        report.violations.push_back(
            "x" + std::to_string(i) + " * E(" + std::to_string(unit.row) +
            "," + std::to_string(unit.col) + ") is not in the span");
      }
    }
  }
  if (numerical_rank(e.basis_matrix(), tol) !=
      static_cast<Eigen::Index>(e.dimension())) {
    report.independent = false;
    report.violations.push_back("basis is linearly dependent");
  }
  return report;
}

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y,
                             const ToleranceProfile& tol) {
  if (!(x.parent.algebra() == y.parent.algebra()) ||
      x.value.rows() != y.value.rows()) {
    throw ShapeError("inner_product: elements of different modules");
  }
  ComplexMatrix product = x.value.adjoint() * y.value;
  if (!contains(x.parent.algebra(), product, tol)) {
    throw ValidationError(
        "inner_product: <x, y> escapes the algebra; module is broken");
  }
  return {x.parent.algebra(), std::move(product)};
}

bool is_submodule(const ConcreteModule& f, const ConcreteModule& e,
                  const ToleranceProfile& tol) {
  require_compatible(f, e, "is_submodule");
  for (const auto& x : f.basis()) {
    if (!e.spans(x, tol)) return false;
  }
  return validate_module(f, tol).valid();
}

ConcreteModule orthogonal_complement(const ConcreteModule& f,
                                     const ConcreteModule& e,
                                     const ToleranceProfile& tol) {
  require_compatible(f, e, "orthogonal_complement");
  const Eigen::Index q = e.col_dim();
  const auto d = static_cast<Eigen::Index>(e.dimension());
  if (d == 0) return ConcreteModule::zero(e.algebra(), e.row_dim());
  // Row block per f: f* e_b flattened, column per basis element e_b.
  ComplexMatrix system(static_cast<Eigen::Index>(f.dimension()) * q * q, d);
  for (std::size_t k = 0; k < f.dimension(); ++k) {
    for (Eigen::Index b = 0; b < d; ++b) {
      system.block(static_cast<Eigen::Index>(k) * q * q, b, q * q, 1) =
          flatten(f.basis()[k].adjoint() * e.basis()[b]);
    }
  }
  const ComplexMatrix kernel = null_space(system, tol);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    ComplexMatrix x = ComplexMatrix::Zero(e.row_dim(), q);
    for (Eigen::Index b = 0; b < d; ++b) x += kernel(b, c) * e.basis()[b];
    basis.push_back(std::move(x));
  }
  return ConcreteModule(e.algebra(), e.row_dim(), std::move(basis));
}

bool is_full(const ConcreteModule& e, const ToleranceProfile& tol) {
  if (e.dimension() == 0) return false;
  const auto& basis = e.basis();
  const Eigen::Index q = e.col_dim();
  ComplexMatrix products(q * q,
                         static_cast<Eigen::Index>(basis.size() * basis.size()));
  Eigen::Index c = 0;
  for (const auto& x : basis) {
    for (const auto& y : basis) products.col(c++) = flatten(x.adjoint() * y);
  }
  return numerical_rank(products, tol) == e.algebra().dimension();
}

ConcreteModule direct_sum(const ConcreteModule& f, const ConcreteModule& g,
                          const ToleranceProfile& tol) {
  require_compatible(f, g, "direct_sum");
  std::vector<ComplexMatrix> basis = f.basis();
  basis.insert(basis.end(), g.basis().begin(), g.basis().end());
  ConcreteModule sum(f.algebra(), f.row_dim(), std::move(basis));
  const Eigen::Index expected =
      numerical_rank(f.basis_matrix(), tol) + numerical_rank(g.basis_matrix(), tol);
  if (numerical_rank(sum.basis_matrix(), tol) != expected) {
    throw ValidationError("direct_sum: summands intersect non-trivially");
  }
  return sum;
}

ConcreteModule external_direct_sum(const ConcreteModule& f,
                                   const ConcreteModule& g) {
  if (!(f.algebra() == g.algebra())) {
    throw ShapeError("external_direct_sum: modules over different algebras");
  }
  const Eigen::Index p = f.row_dim() + g.row_dim();
  const Eigen::Index q = f.col_dim();
  std::vector<ComplexMatrix> basis;
  for (const auto& x : f.basis()) {
    ComplexMatrix s = ComplexMatrix::Zero(p, q);
    s.topRows(f.row_dim()) = x;
    basis.push_back(std::move(s));
  }
  for (const auto& y : g.basis()) {
    ComplexMatrix s = ComplexMatrix::Zero(p, q);
    s.bottomRows(g.row_dim()) = y;
    basis.push_back(std::move(s));
  }
  return ConcreteModule(f.algebra(), p, std::move(basis));
}

ModuleEmbedding ModuleEmbedding::identity(const BlockAlgebra& algebra) {
  ModuleEmbedding emb;
  for (std::size_t b = 0; b < algebra.blocks().size(); ++b) {
    emb.block_offsets.push_back(algebra.block_offset(b));
  }
  return emb;
}

ComplexMatrix ModuleEmbedding::column_injection(
    const BlockAlgebra& source, const BlockAlgebra& target) const {
  if (block_offsets.size() != source.blocks().size()) {
    throw ValidationError("embedding: one offset per source block required");
  }
  const Eigen::Index qt = target.ambient_dim();
  ComplexMatrix j = ComplexMatrix::Zero(source.ambient_dim(), qt);
  std::vector<bool> used(static_cast<std::size_t>(qt), false);
  for (std::size_t b = 0; b < source.blocks().size(); ++b) {
    const Eigen::Index n = source.blocks()[b];
    const Eigen::Index off = block_offsets[b];
    if (off < 0 || off + n > qt) {
      throw ValidationError("embedding: block placed outside the target");
    }
    if (target.block_of(off) != target.block_of(off + n - 1)) {
      throw ValidationError("embedding: block straddles two target blocks");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(off + i)]) {
        throw ValidationError("embedding: overlapping block placement");
      }
      used[static_cast<std::size_t>(off + i)] = true;
      j(source.block_offset(b) + i, off + i) = 1.0;
    }
  }
  return j;
}

ComplexMatrix ModuleEmbedding::rows(Eigen::Index source_rows,
                                    Eigen::Index target_rows) const {
  if (row_map.size() == 0) {
    if (source_rows != target_rows) {
      throw ValidationError("embedding: row_map required when row dims differ");
    }
    return ComplexMatrix::Identity(source_rows, source_rows);
  }
  if (row_map.rows() != target_rows || row_map.cols() != source_rows) {
    throw ValidationError("embedding: row_map has the wrong shape");
  }
  return row_map;
}

bool is_contained_pair(const ConcreteModule& e, const ConcreteModule& f,
                       const ModuleEmbedding& embedding,
                       const ToleranceProfile& tol) {
  const ComplexMatrix j = embedding.column_injection(e.algebra(), f.algebra());
  const ComplexMatrix r = embedding.rows(e.row_dim(), f.row_dim());
  const auto& basis = e.basis();
  std::vector<ComplexMatrix> image;
  image.reserve(basis.size());
  for (const auto& x : basis) {
    image.push_back(r * x * j);
    if (!f.spans(image.back(), tol)) return false;
  }
  const double scale = std::max(1.0, max_basis_norm(e));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const ComplexMatrix lhs = image[a].adjoint() * image[b];
      const ComplexMatrix rhs = j.adjoint() * basis[a].adjoint() * basis[b] * j;
      if ((lhs - rhs).norm() > tol.threshold(scale * scale)) return false;
    }
  }
  return true;
}

}  // namespace semiphi
