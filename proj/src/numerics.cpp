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

#include "semiphi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;

double cutoff(const ToleranceProfile& tol, double sigma_max) {
  return tol.threshold(sigma_max);
}

Eigen::Index rank_from(const Eigen::VectorXd& sigma,
                       const ToleranceProfile& tol) {
  if (sigma.size() == 0) return 0;
  const double cut = cutoff(tol, sigma(0));
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

}  // namespace

void ToleranceProfile::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !std::isfinite(abs_tol) ||
      !std::isfinite(rel_tol)) {
    throw ValidationError("tolerance components must be finite and >= 0");
  }
}

ToleranceProfile ToleranceProfile::uniform(double tol) {
  ToleranceProfile t{tol, tol};
  t.validate();
  return t;
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

PsdReport is_psd(const ComplexMatrix& m, const ToleranceProfile& tol,
                 std::optional<double> scale) {
  if (m.rows() != m.cols()) {
    throw ShapeError("is_psd: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected square");
  }
  require_finite(m, "is_psd");
  PsdReport report;
  if (m.rows() == 0) {
    report.psd = true;
    return report;
  }
  const double size = m.norm();
  const double skew = (m - m.adjoint()).norm();
  if (skew > tol.threshold(std::max(size, scale.value_or(0.0)))) {
    throw ValidationError("is_psd: matrix is not hermitian (|M - M*| = " +
                          std::to_string(skew) + ")");
  }
  const ComplexMatrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("is_psd: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  report.min_eigenvalue = lambda(0);
  report.min_eigenvector = eig.eigenvectors().col(0);
  report.scale = scale.value_or(
      std::max(std::abs(lambda(0)), std::abs(lambda(lambda.size() - 1))));
  report.threshold = tol.threshold(report.scale);
  report.psd = report.min_eigenvalue >= -report.threshold;
  return report;
}

PsdReport loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ToleranceProfile& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("loewner_leq: operand shapes differ");
  }
  if (a.rows() != a.cols()) throw ShapeError("loewner_leq: non-square operands");
  const double scale =
      a.size() == 0 ? 0.0 : std::max(operator_norm(a), operator_norm(b));
  return is_psd(b - a, tol, scale);
}

ComplexMatrix column_span_onb(const ComplexMatrix& columns,
                              const ToleranceProfile& tol) {
  if (columns.cols() == 0 || columns.rows() == 0) {
    return ComplexMatrix(columns.rows(), 0);
  }
  Svd svd(columns, Eigen::ComputeThinU);
  const Eigen::Index r = rank_from(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

ComplexMatrix column_span_onb(std::span<const ComplexVector> vectors,
                              Eigen::Index height,
                              const ToleranceProfile& tol) {
  ComplexMatrix stacked(height, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != height) {
      throw ShapeError("column_span_onb: columns of unequal height");
    }
    stacked.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return column_span_onb(stacked, tol);
}

LeastSquaresResult least_squares_operator(const ComplexMatrix& inputs,
                                          const ComplexMatrix& targets,
                                          const ToleranceProfile& tol) {
  if (inputs.cols() != targets.cols()) {
    throw ShapeError("least_squares_operator: column counts differ");
  }
  LeastSquaresResult out;
  out.op = ComplexMatrix::Zero(targets.rows(), inputs.rows());
  if (inputs.cols() == 0 || inputs.rows() == 0) {
    out.residual = targets.norm();
    return out;
  }
  // S = B A^+ with A^+ = V diag(1/sigma) U* restricted to the numerical range.
  Svd svd(inputs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index r = rank_from(svd.singularValues(), tol);
  if (r > 0) {
    const ComplexMatrix u = svd.matrixU().leftCols(r);
    const ComplexMatrix v = svd.matrixV().leftCols(r);
    const Eigen::VectorXd inv = svd.singularValues().head(r).cwiseInverse();
    out.op = targets * v * inv.cast<Complex>().asDiagonal() * u.adjoint();
  }
  out.residual = (out.op * inputs - targets).norm();
  return out;
}

SpanCoordinates span_coordinates(const ComplexMatrix& basis,
                                 const ComplexVector& v,
                                 const ToleranceProfile& tol) {
  if (basis.rows() != v.size()) {
    throw ShapeError("span_coordinates: vector height differs from basis");
  }
  // c^T = v^T (B^T)^+ reuses the operator solver on transposed data.
  const LeastSquaresResult ls =
      least_squares_operator(basis.transpose(), v.transpose(), tol);
  return {ls.op.transpose(), ls.residual};
}

Eigen::Index numerical_rank(const ComplexMatrix& m,
                            const ToleranceProfile& tol) {
  if (m.size() == 0) return 0;
  Svd svd(m);
  return rank_from(svd.singularValues(), tol);
}

ComplexMatrix null_space(const ComplexMatrix& m, const ToleranceProfile& tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || n == 0) return ComplexMatrix::Identity(n, n);
  Svd svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from(svd.singularValues(), tol);
  return svd.matrixV().rightCols(n - r);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Svd svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector flatten(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index rows,
                        Eigen::Index cols) {
  if (v.size() != rows * cols) throw ShapeError("unflatten: size mismatch");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  }
  return m;
}

ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace semiphi
