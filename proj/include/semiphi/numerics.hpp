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

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace semiphi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Mixed absolute/relative tolerance.  A quantity is "zero at scale s" when
/// its magnitude does not exceed abs_tol + rel_tol * s.  One profile value is
/// threaded through every operation of the library.
struct ToleranceProfile {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  double threshold(double scale) const { return abs_tol + rel_tol * scale; }

  /// Throws ValidationError if either component is negative or not finite.
  void validate() const;

  /// Profile with both components set to `tol`.
  static ToleranceProfile uniform(double tol);
};

/// Outcome of a positive-semidefiniteness test.
struct PsdReport {
  bool psd = false;
  /// Smallest eigenvalue of the hermitian part.
  double min_eigenvalue = 0.0;
  /// The scale the tolerance was evaluated at (largest |eigenvalue| unless
  /// the caller supplied one).
  double scale = 0.0;
  /// Acceptance bound: psd iff min_eigenvalue >= -threshold.
  double threshold = 0.0;
  /// Unit eigenvector for min_eigenvalue (empty for 0x0 input).
  ComplexVector min_eigenvector;

  explicit operator bool() const { return psd; }
};

/// Decides M >= 0.  M must be square and hermitian within tolerance; the
/// hermitian part (M + M*)/2 is diagonalised and its smallest eigenvalue is
/// compared against -(abs_tol + rel_tol * scale).  `scale` defaults to the
/// spectral radius of the hermitian part.
PsdReport is_psd(const ComplexMatrix& m, const ToleranceProfile& tol = {},
                 std::optional<double> scale = std::nullopt);

/// Loewner order A <= B, i.e. B - A >= 0.  The tolerance scale is
/// max(|A|, |B|) so that A ~ B compares as equal.
PsdReport loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                      const ToleranceProfile& tol = {});

/// Orthonormal basis (as columns) of the span of the columns of `columns`.
/// Singular values at or below abs_tol + rel_tol * sigma_max are discarded.
/// An empty input, or one spanning {0}, gives a height x 0 matrix.
ComplexMatrix column_span_onb(const ComplexMatrix& columns,
                              const ToleranceProfile& tol = {});
ComplexMatrix column_span_onb(std::span<const ComplexVector> vectors,
                              Eigen::Index height,
                              const ToleranceProfile& tol = {});

struct LeastSquaresResult {
  /// Minimum-norm minimiser of sum_i |S a_i - b_i|^2; vanishes on the
  /// orthogonal complement of span{a_i}.
  ComplexMatrix op;
  /// Frobenius norm of S A - B.
  double residual = 0.0;
};

/// Solves S * inputs ~= targets column by column.  `inputs` is d x N and
/// `targets` is k x N.
LeastSquaresResult least_squares_operator(const ComplexMatrix& inputs,
                                          const ComplexMatrix& targets,
                                          const ToleranceProfile& tol = {});

struct SpanCoordinates {
  ComplexVector coeffs;
  /// |basis * coeffs - v|; zero (within tolerance) iff v lies in the span.
  double residual = 0.0;
};

/// Minimum-norm coefficients c minimising |basis * c - v|.
SpanCoordinates span_coordinates(const ComplexMatrix& basis,
                                 const ComplexVector& v,
                                 const ToleranceProfile& tol = {});

/// Numerical rank with the relative singular-value cutoff.
Eigen::Index numerical_rank(const ComplexMatrix& m,
                            const ToleranceProfile& tol = {});

/// Orthonormal basis of ker(m) as columns (cols(m) x nullity).
ComplexMatrix null_space(const ComplexMatrix& m,
                         const ToleranceProfile& tol = {});

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row-major flattening of a matrix into a column vector.
ComplexVector flatten(const ComplexMatrix& m);

/// Inverse of flatten.
ComplexMatrix unflatten(const ComplexVector& v, Eigen::Index rows,
                        Eigen::Index cols);

/// Throws ValidationError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);

/// Matrix unit E_ij in M_n.
ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

}  // namespace semiphi
