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

#include "semiphi/cpmaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

// Relative bound for the reconstruction certificates.
constexpr double kCertifyRel = 1e-8;

}  // namespace

CPMap::CPMap(BlockAlgebra domain, Eigen::Index target_dim,
             std::vector<ComplexMatrix> values_on_units)
    : domain_(std::move(domain)),
      target_dim_(target_dim),
      values_(std::move(values_on_units)) {
  if (target_dim_ < 1) throw ValidationError("CPMap: target_dim must be >= 1");
  if (values_.size() != domain_.units().size()) {
    throw ShapeError("CPMap: expected " +
                     std::to_string(domain_.units().size()) +
                     " unit values, got " + std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (v.rows() != target_dim_ || v.cols() != target_dim_) {
      throw ShapeError("CPMap: unit value has the wrong shape");
    }
    require_finite(v, "CPMap value");
  }
}

CPMap CPMap::from_function(const BlockAlgebra& domain, Eigen::Index target_dim,
                           const Function& f) {
  std::vector<ComplexMatrix> values;
  values.reserve(domain.units().size());
  for (std::size_t u = 0; u < domain.units().size(); ++u) {
    values.push_back(f(domain.unit_matrix(u)));
  }
  return CPMap(domain, target_dim, std::move(values));
}

CPMap CPMap::from_kraus(const BlockAlgebra& domain,
                        std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) {
    throw ValidationError("CPMap::from_kraus: empty Kraus set (use zero())");
  }
  const Eigen::Index m = kraus.front().rows();
  for (const auto& k : kraus) {
    if (k.rows() != m || k.cols() != domain.ambient_dim()) {
      throw ShapeError("CPMap::from_kraus: Kraus operators must be m x q");
    }
  }
  return from_function(domain, m, [&](const ComplexMatrix& a) {
    ComplexMatrix out = ComplexMatrix::Zero(m, m);
    for (const auto& k : kraus) out += k * a * k.adjoint();
    return out;
  });
}

CPMap CPMap::identity(const BlockAlgebra& algebra) {
  return from_function(algebra, algebra.ambient_dim(),
                       [](const ComplexMatrix& a) { return a; });
}

CPMap CPMap::trace(const BlockAlgebra& algebra) {
  return from_function(algebra, 1, [](const ComplexMatrix& a) {
    ComplexMatrix t(1, 1);
    t(0, 0) = a.trace();
    return t;
  });
}

CPMap CPMap::transpose(const BlockAlgebra& algebra) {
  return from_function(algebra, algebra.ambient_dim(),
                       [](const ComplexMatrix& a) -> ComplexMatrix {
                         return a.transpose();
                       });
}

CPMap CPMap::zero(const BlockAlgebra& algebra, Eigen::Index target_dim) {
  return from_function(algebra, target_dim, [&](const ComplexMatrix&) {
    return ComplexMatrix::Zero(target_dim, target_dim);
  });
}

ComplexMatrix CPMap::apply(const ComplexMatrix& a,
                           const ToleranceProfile& tol) const {
  if (!contains(domain_, a, tol)) {
    throw ValidationError("CPMap::apply: argument is outside the algebra");
  }
  return apply_extended(a);
}

ComplexMatrix CPMap::apply(const AlgebraElement& a) const {
  if (!(a.parent == domain_)) {
    throw ShapeError("CPMap::apply: element of a different algebra");
  }
  return apply_extended(a.value);
}

ComplexMatrix CPMap::apply_extended(const ComplexMatrix& a) const {
  const Eigen::Index q = domain_.ambient_dim();
  if (a.rows() != q || a.cols() != q) {
    throw ShapeError("CPMap::apply: argument has the wrong shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(target_dim_, target_dim_);
  const auto& units = domain_.units();
  for (std::size_t u = 0; u < units.size(); ++u) {
    const Complex c = a(units[u].row, units[u].col);
    if (c != Complex(0.0)) out += c * values_[u];
  }
  return out;
}

ComplexMatrix CPMap::apply_n(Eigen::Index n, const ComplexMatrix& blocks,
                             const ToleranceProfile& tol) const {
  const Eigen::Index q = domain_.ambient_dim();
  const Eigen::Index m = target_dim_;
  if (n < 1 || blocks.rows() != n * q || blocks.cols() != n * q) {
    throw ShapeError("CPMap::apply_n: expected an n q x n q block matrix");
  }
  ComplexMatrix out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * m, j * m, m, m) = apply(blocks.block(i * q, j * q, q, q), tol);
    }
  }
  return out;
}

bool CPMap::is_hermitian_preserving(const ToleranceProfile& tol) const {
  double scale = 0.0;
  for (const auto& v : values_) scale = std::max(scale, v.norm());
  const auto& units = domain_.units();
  for (std::size_t u = 0; u < units.size(); ++u) {
    const std::size_t t = *domain_.unit_index(units[u].col, units[u].row);
    if ((values_[t] - values_[u].adjoint()).norm() > tol.threshold(scale)) {
      return false;
    }
  }
  return true;
}

bool CPMap::is_unital(const ToleranceProfile& tol) const {
  const ComplexMatrix image = apply_extended(domain_.identity());
  const ComplexMatrix id = ComplexMatrix::Identity(target_dim_, target_dim_);
  return (image - id).norm() <= tol.threshold(1.0);
}

CPMap compose(const CPMap& outer, const CPMap& inner,
              const ToleranceProfile& tol) {
  if (inner.target_dim() != outer.domain().ambient_dim()) {
    throw ShapeError("compose: inner target does not match outer domain");
  }
  std::vector<ComplexMatrix> values;
  values.reserve(inner.values().size());
  for (const auto& v : inner.values()) values.push_back(outer.apply(v, tol));
  return CPMap(inner.domain(), outer.target_dim(), std::move(values));
}

ComplexMatrix choi(const CPMap& phi, const ToleranceProfile& tol) {
  if (!phi.is_hermitian_preserving(tol)) {
    throw ValidationError("choi: map values violate phi(E_ji) = phi(E_ij)*");
  }
  const BlockAlgebra& a = phi.domain();
  const Eigen::Index q = a.ambient_dim();
  const Eigen::Index m = phi.target_dim();
  ComplexMatrix j = ComplexMatrix::Zero(q * m, q * m);
  const auto& units = a.units();
  for (std::size_t u = 0; u < units.size(); ++u) {
    j.block(units[u].row * m, units[u].col * m, m, m) = phi.values()[u];
  }
  return j;
}

CpReport is_completely_positive(const CPMap& phi, const ToleranceProfile& tol) {
  CpReport report;
  report.choi_psd = is_psd(choi(phi, tol), tol);
  report.completely_positive = report.choi_psd.psd;
  report.margin = report.choi_psd.min_eigenvalue;
  return report;
}

std::vector<ComplexMatrix> kraus(const CPMap& phi, const ToleranceProfile& tol) {
  const ComplexMatrix j = choi(phi, tol);
  const PsdReport psd = is_psd(j, tol);
  if (!psd.psd) {
    throw NotCompletelyPositive("kraus: Choi matrix has eigenvalue " +
                                std::to_string(psd.min_eigenvalue));
  }
  const Eigen::Index q = phi.domain().ambient_dim();
  const Eigen::Index m = phi.target_dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig((j + j.adjoint()) * 0.5);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = std::max(0.0, lambda(lambda.size() - 1));
  const double cut = tol.threshold(top);
  std::vector<ComplexMatrix> out;
  // Largest eigenvalues first so the ordering is stable across calls.
  for (Eigen::Index t = lambda.size() - 1; t >= 0; --t) {
    if (lambda(t) <= cut) break;
    const ComplexVector v = std::sqrt(lambda(t)) * eig.eigenvectors().col(t);
    ComplexMatrix k(m, q);
    for (Eigen::Index i = 0; i < q; ++i) {
      for (Eigen::Index r = 0; r < m; ++r) k(r, i) = v(i * m + r);
    }
    out.push_back(std::move(k));
  }
  double err = 0.0;
  double scale = 1.0;
  const BlockAlgebra& a = phi.domain();
  for (std::size_t u = 0; u < a.units().size(); ++u) {
    const ComplexMatrix e = a.unit_matrix(u);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(m, m);
    for (const auto& k : out) rebuilt += k * e * k.adjoint();
    err = std::max(err, (rebuilt - phi.values()[u]).norm());
    scale = std::max(scale, phi.values()[u].norm());
  }
  if (err > kCertifyRel * scale) {
    throw NumericalError("kraus: reconstruction error " + std::to_string(err));
  }
  return out;
}

ComplexMatrix StinespringDilation::represent(const ComplexMatrix& a) const {
  return kron(a, ComplexMatrix::Identity(rank, rank));
}

ComplexMatrix StinespringDilation::compress(const ComplexMatrix& a) const {
  return isometry.adjoint() * represent(a) * isometry;
}

StinespringDilation stinespring(const CPMap& phi, const ToleranceProfile& tol) {
  StinespringDilation d;
  d.kraus = kraus(phi, tol);
  d.rank = static_cast<Eigen::Index>(d.kraus.size());
  const Eigen::Index q = phi.domain().ambient_dim();
  const Eigen::Index m = phi.target_dim();
  const Eigen::Index r = d.rank;
  d.isometry = ComplexMatrix::Zero(q * r, m);
  for (Eigen::Index t = 0; t < r; ++t) {
    const ComplexMatrix kt_adj = d.kraus[static_cast<std::size_t>(t)].adjoint();
    for (Eigen::Index i = 0; i < q; ++i) {
      d.isometry.row(i * r + t) = kt_adj.row(i);
    }
  }
  double scale = 1.0;
  const BlockAlgebra& a = phi.domain();
  for (std::size_t u = 0; u < a.units().size(); ++u) {
    const ComplexMatrix rebuilt = d.compress(a.unit_matrix(u));
    d.reconstruction_error =
        std::max(d.reconstruction_error, (rebuilt - phi.values()[u]).norm());
    scale = std::max(scale, phi.values()[u].norm());
  }
  if (d.reconstruction_error > kCertifyRel * scale) {
    throw NumericalError("stinespring: reconstruction error " +
                         std::to_string(d.reconstruction_error));
  }
  return d;
}

}  // namespace semiphi
