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

#include "semiphi/paulsen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

constexpr double kCertifyRel = 1e-8;

ComplexMatrix embed(const CornerLayout& layout, CornerPart part,
                    const ComplexMatrix& m) {
  const Eigen::Index p = layout.top;
  const Eigen::Index q = layout.bottom;
  ComplexMatrix out = ComplexMatrix::Zero(p + q, p + q);
  switch (part) {
    case CornerPart::kScalar:
      out.topLeftCorner(p, p) = m;
      break;
    case CornerPart::kCorner:
      out.topRightCorner(p, q) = m;
      break;
    case CornerPart::kAdjointCorner:
      out.bottomLeftCorner(q, p) = m;
      break;
    case CornerPart::kDiagonal:
      out.bottomRightCorner(q, q) = m;
      break;
  }
  return out;
}

void require_same_layout(const CornerLayout& a, const CornerLayout& b,
                         const char* op) {
  if (a.top != b.top || a.bottom != b.bottom) {
    throw ShapeError(std::string(op) + ": corner layouts differ");
  }
}

}  // namespace

std::string_view to_string(CornerPart part) {
  switch (part) {
    case CornerPart::kScalar:
      return "scalar";
    case CornerPart::kCorner:
      return "corner";
    case CornerPart::kAdjointCorner:
      return "adjoint-corner";
    case CornerPart::kDiagonal:
      return "diagonal";
  }
  return "unknown";
}

CornerPart CornerLayout::part_of(Eigen::Index row, Eigen::Index col) const {
  const bool top_row = row < top;
  const bool left_col = col < top;
  if (top_row) return left_col ? CornerPart::kScalar : CornerPart::kCorner;
  return left_col ? CornerPart::kAdjointCorner : CornerPart::kDiagonal;
}

PaulsenSystem::PaulsenSystem(ConcreteModule module) : module_(std::move(module)) {
  const CornerLayout lay = layout();
  const Eigen::Index p = lay.top;
  basis_.push_back({CornerPart::kScalar, 0,
                    embed(lay, CornerPart::kScalar,
                          ComplexMatrix::Identity(p, p))});
  const auto& e = module_.basis();
  for (std::size_t k = 0; k < e.size(); ++k) {
    basis_.push_back({CornerPart::kCorner, k,
                      embed(lay, CornerPart::kCorner, e[k])});
  }
  for (std::size_t k = 0; k < e.size(); ++k) {
    basis_.push_back({CornerPart::kAdjointCorner, k,
                      embed(lay, CornerPart::kAdjointCorner, e[k].adjoint())});
  }
  const BlockAlgebra& a = module_.algebra();
  for (std::size_t u = 0; u < a.units().size(); ++u) {
    basis_.push_back({CornerPart::kDiagonal, u,
                      embed(lay, CornerPart::kDiagonal, a.unit_matrix(u))});
  }
  const Eigen::Index n = lay.size();
  flat_.resize(n * n, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    flat_.col(static_cast<Eigen::Index>(i)) = flatten(basis_[i].matrix);
  }
}

SpanCoordinates PaulsenSystem::coordinates(const ComplexMatrix& m,
                                           const ToleranceProfile& tol) const {
  const Eigen::Index n = layout().size();
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError("PaulsenSystem: element has the wrong shape");
  }
  return span_coordinates(flat_, flatten(m), tol);
}

bool PaulsenSystem::contains(const ComplexMatrix& m,
                             const ToleranceProfile& tol) const {
  return coordinates(m, tol).residual <= tol.threshold(m.norm());
}

PaulsenSystem build_system(const ConcreteModule& e) { return PaulsenSystem(e); }

ComplexMatrix SystemMap::apply(const ComplexMatrix& m,
                               const ToleranceProfile& tol) const {
  const SpanCoordinates c = domain.coordinates(m, tol);
  if (c.residual > tol.threshold(m.norm())) {
    throw ValidationError("SystemMap::apply: argument is outside the system");
  }
  const Eigen::Index n = codomain.layout().size();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < action.size(); ++i) {
    const Complex ci = c.coeffs(static_cast<Eigen::Index>(i));
    if (ci != Complex(0.0)) out += ci * action[i];
  }
  return out;
}

ComplexMatrix SystemMap::apply_n(Eigen::Index n, const ComplexMatrix& blocks,
                                 const ToleranceProfile& tol) const {
  const Eigen::Index d = domain.layout().size();
  const Eigen::Index c = codomain.layout().size();
  if (n < 1 || blocks.rows() != n * d || blocks.cols() != n * d) {
    throw ShapeError("SystemMap::apply_n: expected an n x n block matrix");
  }
  ComplexMatrix out(n * c, n * c);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * c, j * c, c, c) = apply(blocks.block(i * d, j * d, d, d), tol);
    }
  }
  return out;
}

bool SystemMap::is_unital(const ToleranceProfile& tol) const {
  const Eigen::Index d = domain.layout().size();
  const Eigen::Index c = codomain.layout().size();
  const ComplexMatrix image = apply(ComplexMatrix::Identity(d, d), tol);
  return (image - ComplexMatrix::Identity(c, c)).norm() <= tol.threshold(1.0);
}

PaulsenSystem operator_codomain(Eigen::Index h1_dim, Eigen::Index h2_dim) {
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index i = 0; i < h2_dim; ++i) {
    for (Eigen::Index j = 0; j < h1_dim; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(h2_dim, h1_dim);
      e(i, j) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  return PaulsenSystem(
      ConcreteModule(BlockAlgebra::full(h1_dim), h2_dim, std::move(basis)));
}

SystemMap block_map(const ModuleMap& map, const CPMap& phi,
                    const ToleranceProfile& tol) {
  return block_map(map, phi, operator_codomain(map.h1_dim(), map.h2_dim()), tol);
}

SystemMap block_map(const ModuleMap& map, const CPMap& phi,
                    const PaulsenSystem& codomain,
                    const ToleranceProfile& tol) {
  if (!(map.domain().algebra() == phi.domain())) {
    throw ShapeError("block_map: module algebra differs from the CP map domain");
  }
  if (map.h1_dim() != phi.target_dim()) {
    throw ShapeError("block_map: h1_dim differs from phi target_dim");
  }
  const CornerLayout out = codomain.layout();
  if (out.top != map.h2_dim() || out.bottom != map.h1_dim()) {
    throw ShapeError("block_map: codomain layout must be (h2 | h1)");
  }
  PaulsenSystem domain(map.domain());
  std::vector<ComplexMatrix> action;
  action.reserve(domain.dimension());
  for (const auto& el : domain.basis()) {
    ComplexMatrix img;
    switch (el.part) {
      case CornerPart::kScalar:
        img = embed(out, CornerPart::kScalar,
                    ComplexMatrix::Identity(out.top, out.top));
        break;
      case CornerPart::kCorner:
        img = embed(out, CornerPart::kCorner, map.values()[el.index]);
        break;
      case CornerPart::kAdjointCorner:
        img = embed(out, CornerPart::kAdjointCorner,
                    map.values()[el.index].adjoint());
        break;
      case CornerPart::kDiagonal:
        img = embed(out, CornerPart::kDiagonal, phi.values()[el.index]);
        break;
    }
    if (!codomain.contains(img, tol)) {
      throw ValidationError("block_map: image of a " +
                            std::string(to_string(el.part)) +
                            " basis element is outside the codomain system");
    }
    action.push_back(std::move(img));
  }
  return SystemMap{std::move(domain), codomain, std::move(action), map, phi};
}

SystemMap compose(const SystemMap& outer, const SystemMap& inner,
                  const ToleranceProfile& tol) {
  require_same_layout(inner.codomain.layout(), outer.domain.layout(),
                      "compose");
  std::vector<ComplexMatrix> action;
  action.reserve(inner.action.size());
  for (const auto& v : inner.action) action.push_back(outer.apply(v, tol));
  SystemMap out{inner.domain, outer.codomain, std::move(action), std::nullopt,
                std::nullopt};
  if (outer.corner_map && inner.corner_map && outer.diagonal_map &&
      inner.diagonal_map) {
    out.corner_map = compose(*outer.corner_map, *inner.corner_map, tol);
    out.diagonal_map = compose(*outer.diagonal_map, *inner.diagonal_map, tol);
  }
  return out;
}

ComplexMatrix random_psd_element(const PaulsenSystem& system, Eigen::Index n,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const Eigen::Index d = system.layout().size();
  ComplexMatrix z = ComplexMatrix::Zero(n * d, n * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (const auto& el : system.basis()) {
        z.block(i * d, j * d, d, d) += Complex(g(rng), g(rng)) * el.matrix;
      }
    }
  }
  ComplexMatrix h = (z + z.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  const double mu = std::max(0.0, -eig.eigenvalues()(0));
  h += mu * ComplexMatrix::Identity(n * d, n * d);
  return h;
}

SystemCpReport is_cp_system_map(const SystemMap& map,
                                const ToleranceProfile& tol,
                                const SamplingOptions& sampling) {
  if (!map.corner_map || !map.diagonal_map) {
    throw ValidationError(
        "is_cp_system_map: only corner-structured maps (from block_map) are "
        "decidable");
  }
  SystemCpReport report;
  const SemiPhiReport semi =
      is_completely_semi_phi(*map.corner_map, *map.diagonal_map, tol);
  const CpReport cp = is_completely_positive(*map.diagonal_map, tol);
  report.margin = semi.margin;
  // The diagonal compression of a CP map is CP, so phi must be as well.
  report.completely_positive = semi.holds && cp.completely_positive;
  if (!report.completely_positive) return report;

  report.worst_sample_ratio = 0.0;
  std::uint64_t stream = sampling.seed;
  for (int n = 1; n <= sampling.max_level; ++n) {
    for (int s = 0; s < sampling.samples_per_level; ++s) {
      const ComplexMatrix x = random_psd_element(map.domain, n, stream++);
      const ComplexMatrix y = map.apply_n(n, x, tol);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(
          (y + y.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
      const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
      const double ratio = eig.eigenvalues()(0) / scale;
      report.worst_sample_ratio = std::min(report.worst_sample_ratio, ratio);
      if (ratio < -kCertifyRel) report.sampling_consistent = false;
      ++report.samples_checked;
    }
  }
  return report;
}

CornerReport is_corner_preserving(std::span<const ComplexMatrix> inputs,
                                  std::span<const ComplexMatrix> outputs,
                                  const CornerLayout& layout_in,
                                  const CornerLayout& layout_out,
                                  const ToleranceProfile& tol) {
  if (inputs.size() != outputs.size()) {
    throw ShapeError("is_corner_preserving: inputs and outputs differ in count");
  }
  CornerReport report;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ComplexMatrix& x = inputs[i];
    const ComplexMatrix& y = outputs[i];
    if (x.rows() != layout_in.size() || x.cols() != layout_in.size() ||
        y.rows() != layout_out.size() || y.cols() != layout_out.size()) {
      throw ShapeError("is_corner_preserving: matrix does not fit its layout");
    }
    const double in_cut = tol.threshold(x.norm());
    std::array<bool, 4> occupied{};
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        if (std::abs(x(r, c)) > in_cut) {
          occupied[static_cast<std::size_t>(layout_in.part_of(r, c))] = true;
        }
      }
    }
    CornerPart input_part = CornerPart::kScalar;
    for (std::size_t k = 0; k < occupied.size(); ++k) {
      if (occupied[k]) {
        input_part = static_cast<CornerPart>(k);
        break;
      }
    }
    const double out_cut = tol.threshold(std::max(x.norm(), y.norm()));
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      for (Eigen::Index c = 0; c < y.cols(); ++c) {
        const double mag = std::abs(y(r, c));
        if (mag <= out_cut) continue;
        const CornerPart part = layout_out.part_of(r, c);
        if (occupied[static_cast<std::size_t>(part)]) continue;
        report.preserving = false;
        report.violations.push_back({i, input_part, r, c, part, mag});
      }
    }
  }
  return report;
}

CornerReport is_corner_preserving(const SystemMap& map,
                                  const ToleranceProfile& tol) {
  std::vector<ComplexMatrix> inputs;
  inputs.reserve(map.domain.dimension());
  for (const auto& el : map.domain.basis()) inputs.push_back(el.matrix);
  return is_corner_preserving(inputs, map.action, map.domain.layout(),
                              map.codomain.layout(), tol);
}

CPMap example_3_4_map(Eigen::Index h_dim) {
  if (h_dim < 1) throw ValidationError("example_3_4_map: h_dim must be >= 1");
  const Eigen::Index h = h_dim;
  return CPMap::from_function(
      BlockAlgebra::full(2 * h), 4 * h, [h](const ComplexMatrix& t) {
        const auto t1 = t.topLeftCorner(h, h);
        const auto t2 = t.topRightCorner(h, h);
        const auto t3 = t.bottomLeftCorner(h, h);
        const auto t4 = t.bottomRightCorner(h, h);
        ComplexMatrix out = ComplexMatrix::Zero(4 * h, 4 * h);
        out.block(0, 0, h, h) = t1;
        out.block(0, 3 * h, h, h) = t2;
        out.block(h, h, h, h) = t4;
        out.block(2 * h, 2 * h, h, h) = t1;
        out.block(3 * h, 0, h, h) = t3;
        out.block(3 * h, 3 * h, h, h) = t4;
        return out;
      });
}

InjectivityResult injectivity_demo(const ConcreteModule& g,
                                   const ConcreteModule& f,
                                   const ModuleEmbedding& embedding,
                                   const ModuleMap& map, const CPMap& phi,
                                   const ToleranceProfile& tol) {
  if (!(map.domain().algebra() == g.algebra()) ||
      map.domain().row_dim() != g.row_dim() ||
      map.domain().dimension() != g.dimension()) {
    throw ShapeError("injectivity_demo: Phi is not defined on G");
  }
  if (!(phi.domain() == g.algebra()) || map.h1_dim() != phi.target_dim()) {
    throw ShapeError("injectivity_demo: phi does not match G and Phi");
  }
  if (!is_contained_pair(g, f, embedding, tol)) {
    throw PreconditionError("injectivity_demo: (G, C) is not contained in (F, B)");
  }
  if (!is_completely_positive(phi, tol)) {
    throw PreconditionError("injectivity_demo: phi is not completely positive");
  }
  const SemiPhiReport semi = is_completely_semi_phi(map, phi, tol);
  if (!semi.holds) {
    throw PreconditionError("injectivity_demo: Phi is not completely semi-phi");
  }

  const BlockAlgebra& c_alg = g.algebra();
  const BlockAlgebra& b_alg = f.algebra();
  const ComplexMatrix j = embedding.column_injection(c_alg, b_alg);
  const ComplexMatrix r = embedding.rows(g.row_dim(), f.row_dim());

  CPMap psi = CPMap::from_function(
      b_alg, phi.target_dim(), [&](const ComplexMatrix& b) {
        return phi.apply(pinch_matrix(c_alg, j * b * j.adjoint()), tol);
      });

  std::vector<ComplexMatrix> image;
  image.reserve(g.dimension());
  for (const auto& x : g.basis()) image.push_back(r * x * j);
  ConcreteModule transported(b_alg, f.row_dim(), std::move(image));
  ModuleMap moved(transported, map.h1_dim(), map.h2_dim(), map.values());

  ExtendOptions options;
  options.require_submodule = false;
  ExtensionResult ext = extend_semi_phi(moved, f, psi, tol, options);

  InjectivityResult out{psi, std::move(ext)};
  for (std::size_t k = 0; k < g.dimension(); ++k) {
    const ComplexMatrix got =
        out.extension.phi_prime.evaluate(transported.basis()[k], tol);
    out.restriction_error =
        std::max(out.restriction_error, (got - map.values()[k]).norm());
  }
  for (std::size_t u = 0; u < c_alg.units().size(); ++u) {
    const ComplexMatrix got =
        out.psi.apply(j.adjoint() * c_alg.unit_matrix(u) * j, tol);
    out.psi_extension_error =
        std::max(out.psi_extension_error, (got - phi.values()[u]).norm());
  }
  out.psi_completely_positive = is_completely_positive(out.psi, tol).completely_positive;
  double scale = 1.0;
  for (const auto& v : map.values()) scale = std::max(scale, v.norm());
  for (const auto& v : phi.values()) scale = std::max(scale, v.norm());
  out.success = out.psi_completely_positive &&
                out.extension.report.extension_semi_phi &&
                out.restriction_error <= kCertifyRel * scale &&
                out.psi_extension_error <= kCertifyRel * scale;
  return out;
}

}  // namespace semiphi
