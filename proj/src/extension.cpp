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

#include "semiphi/extension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

// Relative bound for the engine's self-certificates.
constexpr double kCertifyRel = 1e-8;

void require_pairing(const ModuleMap& map, const CPMap& phi, const char* op) {
  if (!(map.domain().algebra() == phi.domain())) {
    throw ShapeError(std::string(op) +
                     ": module algebra differs from the CP map domain");
  }
  if (map.h1_dim() != phi.target_dim()) {
    throw ShapeError(std::string(op) + ": h1_dim differs from phi target_dim");
  }
}

double max_norm(const std::vector<ComplexMatrix>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s = std::max(s, m.norm());
  return s;
}

// Columns Phi(x_k) e_l in (k, l) order: an h2 x (dim * h1) matrix.
ComplexMatrix range_columns(const ModuleMap& map) {
  const Eigen::Index m = map.h1_dim();
  ComplexMatrix cols(map.h2_dim(),
                     static_cast<Eigen::Index>(map.values().size()) * m);
  for (std::size_t k = 0; k < map.values().size(); ++k) {
    cols.middleCols(static_cast<Eigen::Index>(k) * m, m) = map.values()[k];
  }
  return cols;
}

}  // namespace

ModuleMap::ModuleMap(ConcreteModule domain, Eigen::Index h1_dim,
                     Eigen::Index h2_dim, std::vector<ComplexMatrix> values)
    : domain_(std::move(domain)),
      h1_dim_(h1_dim),
      h2_dim_(h2_dim),
      values_(std::move(values)) {
  if (h1_dim_ < 1 || h2_dim_ < 0) {
    throw ValidationError("ModuleMap: h1_dim must be >= 1 and h2_dim >= 0");
  }
  if (values_.size() != domain_.dimension()) {
    throw ShapeError("ModuleMap: expected one value per domain basis element");
  }
  for (const auto& v : values_) {
    if (v.rows() != h2_dim_ || v.cols() != h1_dim_) {
      throw ShapeError("ModuleMap: value has the wrong shape");
    }
    require_finite(v, "ModuleMap value");
  }
}

ModuleMap ModuleMap::from_function(const ConcreteModule& domain,
                                   Eigen::Index h1_dim, Eigen::Index h2_dim,
                                   const Function& f) {
  std::vector<ComplexMatrix> values;
  values.reserve(domain.dimension());
  for (const auto& x : domain.basis()) values.push_back(f(x));
  return ModuleMap(domain, h1_dim, h2_dim, std::move(values));
}

ModuleMap ModuleMap::zero(const ConcreteModule& domain, Eigen::Index h1_dim,
                          Eigen::Index h2_dim) {
  return from_function(domain, h1_dim, h2_dim, [&](const ComplexMatrix&) {
    return ComplexMatrix::Zero(h2_dim, h1_dim);
  });
}

ComplexMatrix ModuleMap::evaluate(const ComplexMatrix& x,
                                  const ToleranceProfile& tol) const {
  const SpanCoordinates c = domain_.coordinates(x, tol);
  if (c.residual > tol.threshold(x.norm())) {
    throw ValidationError("ModuleMap::evaluate: argument outside the domain");
  }
  ComplexMatrix out = ComplexMatrix::Zero(h2_dim_, h1_dim_);
  for (std::size_t b = 0; b < values_.size(); ++b) {
    out += c.coeffs(static_cast<Eigen::Index>(b)) * values_[b];
  }
  return out;
}

ModuleMap ModuleMap::restrict_to(const ConcreteModule& sub,
                                 const ToleranceProfile& tol) const {
  return from_function(sub, h1_dim_, h2_dim_, [&](const ComplexMatrix& x) {
    return evaluate(x, tol);
  });
}

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner,
                  const ToleranceProfile& tol) {
  if (inner.h2_dim() != outer.domain().row_dim() ||
      inner.h1_dim() != outer.domain().col_dim()) {
    throw ShapeError("compose: inner values do not fit the outer domain");
  }
  return ModuleMap::from_function(
      inner.domain(), outer.h1_dim(), outer.h2_dim(),
      [&](const ComplexMatrix& x) {
        return outer.evaluate(inner.evaluate(x, tol), tol);
      });
}

PhiMapReport is_phi_map(const ModuleMap& map, const CPMap& phi,
                        const ToleranceProfile& tol) {
  require_pairing(map, phi, "is_phi_map");
  PhiMapReport report;
  const auto& basis = map.domain().basis();
  const auto& values = map.values();
  double scale = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const ComplexMatrix lhs = values[i].adjoint() * values[j];
      const ComplexMatrix rhs =
          phi.apply(basis[i].adjoint() * basis[j], tol);
      scale = std::max({scale, lhs.norm(), rhs.norm()});
      const double dev = (lhs - rhs).norm();
      if (dev > report.worst_deviation || (i == 0 && j == 0)) {
        report.worst_deviation = dev;
        report.worst_i = i;
        report.worst_j = j;
      }
    }
  }
  report.scale = scale;
  report.threshold = tol.threshold(scale);
  report.holds = report.worst_deviation <= report.threshold;
  return report;
}

bool is_nondegenerate(const ModuleMap& map, const ToleranceProfile& tol) {
  return numerical_rank(range_columns(map), tol) == map.h2_dim();
}

GramPair gram_pair(const ModuleMap& map, const CPMap& phi) {
  require_pairing(map, phi, "gram_pair");
  const auto& basis = map.domain().basis();
  const auto& values = map.values();
  const Eigen::Index m = map.h1_dim();
  const auto d = static_cast<Eigen::Index>(basis.size());
  GramPair g{ComplexMatrix(d * m, d * m), ComplexMatrix(d * m, d * m)};
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index kk = 0; kk < d; ++kk) {
      const auto ku = static_cast<std::size_t>(k);
      const auto kku = static_cast<std::size_t>(kk);
      g.g_phi.block(k * m, kk * m, m, m) =
          phi.apply_extended(basis[ku].adjoint() * basis[kku]);
      g.g_map.block(k * m, kk * m, m, m) =
          values[ku].adjoint() * values[kku];
    }
  }
  return g;
}

SemiPhiReport is_completely_semi_phi(const ModuleMap& map, const CPMap& phi,
                                     const ToleranceProfile& tol) {
  SemiPhiReport report;
  report.gram = gram_pair(map, phi);
  report.psd = loewner_leq(report.gram.g_map, report.gram.g_phi, tol);
  report.holds = report.psd.psd;
  report.margin = report.psd.min_eigenvalue;
  return report;
}

SemiPhiWitness evaluate_witness(const ModuleMap& map, const CPMap& phi,
                                std::vector<ComplexMatrix> elements,
                                std::vector<ComplexVector> vectors,
                                const ToleranceProfile& tol) {
  require_pairing(map, phi, "evaluate_witness");
  if (elements.size() != vectors.size()) {
    throw ShapeError("evaluate_witness: family sizes differ");
  }
  ComplexVector image = ComplexVector::Zero(map.h2_dim());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (vectors[i].size() != map.h1_dim()) {
      throw ShapeError("evaluate_witness: vector of the wrong length");
    }
    image += map.evaluate(elements[i], tol) * vectors[i];
  }
  double rhs = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const ComplexMatrix a =
          phi.apply(elements[i].adjoint() * elements[j], tol);
      rhs += (vectors[i].adjoint() * a * vectors[j])(0, 0).real();
    }
  }
  SemiPhiWitness w{std::move(elements), std::move(vectors), image.squaredNorm(),
                   rhs, 0.0};
  w.gap = w.lhs - w.rhs;
  return w;
}

std::optional<SemiPhiWitness> semiphi_witness(const ModuleMap& map,
                                              const CPMap& phi,
                                              const ToleranceProfile& tol) {
  const SemiPhiReport report = is_completely_semi_phi(map, phi, tol);
  if (report.holds) return std::nullopt;
  const Eigen::Index m = map.h1_dim();
  const ComplexVector& c = report.psd.min_eigenvector;
  std::vector<ComplexMatrix> elements = map.domain().basis();
  std::vector<ComplexVector> vectors;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    vectors.push_back(c.segment(static_cast<Eigen::Index>(k) * m, m));
  }
  SemiPhiWitness w =
      evaluate_witness(map, phi, std::move(elements), std::move(vectors), tol);
  if (!(w.gap > 0.0)) {
    throw NumericalError("semiphi_witness: re-evaluated gap is not positive");
  }
  return w;
}

KsgnsResult ksgns(const CPMap& phi, const ConcreteModule& e,
                  const ToleranceProfile& tol) {
  if (!(e.algebra() == phi.domain())) {
    throw ShapeError("ksgns: module algebra differs from the CP map domain");
  }
  StinespringDilation dil = stinespring(phi, tol);
  const Eigen::Index r = dil.rank;
  const Eigen::Index m = phi.target_dim();
  const Eigen::Index p = e.row_dim();
  const ComplexMatrix id_r = ComplexMatrix::Identity(r, r);

  std::vector<ComplexMatrix> lifted;  // (x (x) I_r) V, (p r) x m each
  lifted.reserve(e.dimension());
  for (const auto& x : e.basis()) lifted.push_back(kron(x, id_r) * dil.isometry);

  ComplexMatrix spanning(p * r, static_cast<Eigen::Index>(lifted.size()) * m);
  for (std::size_t k = 0; k < lifted.size(); ++k) {
    spanning.middleCols(static_cast<Eigen::Index>(k) * m, m) = lifted[k];
  }
  ComplexMatrix q = column_span_onb(spanning, tol);

  std::vector<ComplexMatrix> values;
  values.reserve(lifted.size());
  for (const auto& l : lifted) values.push_back(q.adjoint() * l);
  ModuleMap map(e, m, q.cols(), std::move(values));

  const PhiMapReport check = is_phi_map(map, phi, tol);
  if (check.worst_deviation >
      std::max(check.threshold, kCertifyRel * std::max(1.0, check.scale))) {
    throw NumericalError("ksgns: phi-map identity fails by " +
                         std::to_string(check.worst_deviation));
  }
  return {std::move(map), std::move(q), std::move(dil)};
}

ObstructionReport phi_extension_obstruction(const CPMap& phi,
                                            const ConcreteModule& f,
                                            const ConcreteModule& e,
                                            const ToleranceProfile& tol) {
  if (!(e.algebra() == phi.domain())) {
    throw ShapeError("obstruction: module algebra differs from the CP map domain");
  }
  if (!is_submodule(f, e, tol)) {
    throw PreconditionError("obstruction: F is not a submodule of E");
  }
  ObstructionReport report{true, 0.0, 0.0, orthogonal_complement(f, e, tol)};
  const double phi_scale = std::max(1.0, max_norm(phi.values()));
  double scale = 0.0;
  for (const auto& z : report.complement.basis()) {
    for (const auto& x : e.basis()) {
      const ComplexMatrix v = phi.apply(z.adjoint() * x, tol);
      report.norm = std::max(report.norm, operator_norm(v));
      scale = std::max(scale, z.norm() * x.norm() * phi_scale);
    }
  }
  report.threshold = tol.threshold(scale);
  report.vanishes = report.norm <= report.threshold;
  return report;
}

ExtensionResult extend_semi_phi(const ModuleMap& map, const ConcreteModule& e,
                                const CPMap& phi, const ToleranceProfile& tol,
                                const ExtendOptions& options) {
  require_pairing(map, phi, "extend_semi_phi");
  const ConcreteModule& f = map.domain();
  if (!(e.algebra() == f.algebra()) || e.row_dim() != f.row_dim()) {
    throw ShapeError("extend_semi_phi: F and E have different shapes");
  }
  if (options.require_submodule) {
    if (!is_submodule(f, e, tol)) {
      throw PreconditionError("extend_semi_phi: F is not a submodule of E");
    }
  } else {
    for (const auto& x : f.basis()) {
      if (!e.spans(x, tol)) {
        throw PreconditionError("extend_semi_phi: F is not contained in E");
      }
    }
  }

  ExtensionReport report;
  report.empty_submodule = f.dimension() == 0;
  report.zero_phi = max_norm(phi.values()) <= tol.threshold(0.0);
  if (report.empty_submodule) report.notes.push_back("empty submodule: Phi' = 0");
  if (report.zero_phi) report.notes.push_back("phi = 0 forces Phi' = 0");

  const SemiPhiReport input = is_completely_semi_phi(map, phi, tol);
  report.input_margin = input.margin;
  if (!input.holds) {
    throw PreconditionError(
        "extend_semi_phi: Phi is not completely semi-phi on F (margin " +
        std::to_string(input.margin) + ")");
  }
  report.input_is_phi_map = is_phi_map(map, phi, tol).holds;

  KsgnsResult k = ksgns(phi, e, tol);
  const Eigen::Index m = phi.target_dim();
  const Eigen::Index dim_h = k.subspace_onb.cols();

  // Spanning set {Phi_phi(f) h} of [Phi_phi(F) H1] and its targets {Phi(f) h}.
  const ModuleMap on_f = k.map.restrict_to(f, tol);
  const ComplexMatrix inputs = range_columns(on_f);
  const ComplexMatrix targets = range_columns(map);

  const ComplexMatrix range_onb = column_span_onb(inputs, tol);
  ComplexMatrix projection = range_onb * range_onb.adjoint();
  if (projection.size() == 0) projection = ComplexMatrix::Zero(dim_h, dim_h);

  const LeastSquaresResult ls = least_squares_operator(inputs, targets, tol);
  report.lsq_residual = ls.residual;
  const double target_scale = std::max(1.0, targets.norm());
  if (ls.residual > std::max(tol.threshold(target_scale),
                             kCertifyRel * target_scale)) {
    throw NumericalError("extend_semi_phi: S0 is not well defined (residual " +
                         std::to_string(ls.residual) + ")");
  }
  report.contraction_norm = operator_norm(ls.op);
  if (report.contraction_norm > 1.0 + 10.0 * tol.threshold(1.0)) {
    throw PreconditionError("extend_semi_phi: S0 has norm " +
                            std::to_string(report.contraction_norm) +
                            " > 1; Phi is not completely semi-phi");
  }
  ComplexMatrix composite = ls.op * projection;

  ModuleMap phi_prime = ModuleMap::from_function(
      e, m, map.h2_dim(), [&](const ComplexMatrix& x) {
        return ComplexMatrix(composite * k.map.evaluate(x, tol));
      });
  // Basis order of E: evaluate() above reproduces k.map's own values.

  const double value_scale = std::max(1.0, max_norm(map.values()));
  for (std::size_t b = 0; b < f.dimension(); ++b) {
    const ComplexMatrix got = phi_prime.evaluate(f.basis()[b], tol);
    report.restriction_error =
        std::max(report.restriction_error, (got - map.values()[b]).norm());
  }
  const SemiPhiReport ext = is_completely_semi_phi(phi_prime, phi, tol);
  report.extension_semi_phi = ext.holds;
  report.extension_margin = ext.margin;

  ConcreteModule complement = ConcreteModule::zero(e.algebra(), e.row_dim());
  if (options.require_submodule) {
    const ObstructionReport obs = phi_extension_obstruction(phi, f, e, tol);
    report.obstruction_vanishes = obs.vanishes;
    report.obstruction_norm = obs.norm;
    complement = obs.complement;
  }

  if (options.require_submodule && report.input_is_phi_map &&
      report.obstruction_vanishes) {
    report.parts_checked = true;
    std::vector<ComplexMatrix> ys = f.basis();
    for (const auto& z : complement.basis()) {
      const ComplexMatrix img = phi_prime.evaluate(z, tol);
      report.part_i_error = std::max(report.part_i_error, img.norm());
      ys.push_back(z);
    }
    double scale = value_scale * value_scale;
    for (const auto& x : e.basis()) {
      const ComplexMatrix px = phi_prime.evaluate(x, tol);
      for (const auto& y : ys) {
        const ComplexMatrix py = phi_prime.evaluate(y, tol);
        const ComplexMatrix xy = phi.apply(x.adjoint() * y, tol);
        const ComplexMatrix yx = phi.apply(y.adjoint() * x, tol);
        scale = std::max({scale, xy.norm(), yx.norm()});
        report.part_ii_error =
            std::max({report.part_ii_error, (px.adjoint() * py - xy).norm(),
                      (py.adjoint() * px - yx).norm()});
      }
    }
    report.part_i_holds = report.part_i_error <= kCertifyRel * value_scale;
    report.part_ii_holds = report.part_ii_error <= kCertifyRel * scale;
  }

  const bool restriction_ok =
      report.restriction_error <= kCertifyRel * value_scale;
  report.certified = restriction_ok && report.extension_semi_phi &&
                     (!report.parts_checked ||
                      (report.part_i_holds && report.part_ii_holds));
  if (!report.certified) {
    throw NumericalError(
        "extend_semi_phi: certification failed (restriction error " +
        std::to_string(report.restriction_error) + ", extension margin " +
        std::to_string(report.extension_margin) + ")");
  }

  return ExtensionResult{map,
                         e,
                         std::move(complement),
                         std::move(phi_prime),
                         std::move(k.map),
                         std::move(k.subspace_onb),
                         std::move(projection),
                         ls.op,
                         std::move(composite),
                         std::move(k.dilation),
                         std::move(report)};
}

CompareReport compare_extensions(const ModuleMap& gamma,
                                 const ExtensionResult& result,
                                 const CPMap& phi, const ConcreteModule& f,
                                 const ToleranceProfile& tol) {
  const ConcreteModule& e = result.ambient;
  const ModuleMap& original = result.original;
  if (!(gamma.domain().algebra() == e.algebra()) ||
      gamma.domain().row_dim() != e.row_dim() ||
      gamma.h1_dim() != original.h1_dim() ||
      gamma.h2_dim() != original.h2_dim()) {
    throw ShapeError("compare_extensions: Gamma does not match the extension");
  }
  for (const auto& x : e.basis()) {
    if (!gamma.domain().spans(x, tol)) {
      throw PreconditionError("compare_extensions: Gamma is not defined on E");
    }
  }
  if (f.dimension() != original.domain().dimension()) {
    throw PreconditionError("compare_extensions: F differs from the extension's F");
  }
  const double value_scale = std::max(1.0, max_norm(original.values()));
  double restriction = 0.0;
  for (std::size_t b = 0; b < f.dimension(); ++b) {
    const ComplexMatrix g = gamma.evaluate(f.basis()[b], tol);
    const ComplexMatrix o = original.evaluate(f.basis()[b], tol);
    restriction = std::max(restriction, (g - o).norm());
  }
  std::vector<std::string> failures;
  if (restriction > kCertifyRel * value_scale) {
    failures.push_back("Gamma does not restrict to Phi on F (error " +
                       std::to_string(restriction) + ")");
  }
  if (!is_nondegenerate(original, tol)) {
    failures.push_back("Phi is degenerate");
  }
  const ModuleMap gamma_on_e = gamma.restrict_to(e, tol);
  const PhiMapReport pm = is_phi_map(gamma_on_e, phi, tol);
  if (!pm.holds) {
    failures.push_back("Gamma is not a phi-map (deviation " +
                       std::to_string(pm.worst_deviation) + ")");
  }
  if (!failures.empty()) {
    std::string msg = "compare_extensions: precondition failed:";
    for (const auto& s : failures) msg += " " + s + ";";
    throw PreconditionError(msg);
  }
  CompareReport report;
  double scale = value_scale;
  for (std::size_t b = 0; b < e.dimension(); ++b) {
    const ComplexMatrix g = gamma_on_e.values()[b];
    const ComplexMatrix p = result.phi_prime.values()[b];
    scale = std::max({scale, g.norm(), p.norm()});
    report.max_deviation = std::max(report.max_deviation, (g - p).norm());
  }
  report.threshold = std::max(tol.threshold(scale), kCertifyRel * scale);
  report.equal = report.max_deviation <= report.threshold;
  return report;
}

ModuleMap canonical_compacts_extension(const ModuleMap& map,
                                       const ConcreteModule& e,
                                       const CPMap& phi,
                                       const ToleranceProfile& tol) {
  require_pairing(map, phi, "canonical_compacts_extension");
  const ConcreteModule& f = map.domain();
  const ObstructionReport obs = phi_extension_obstruction(phi, f, e, tol);
  if (!obs.vanishes) {
    throw ObstructionError(
        "canonical_compacts_extension: phi(<F^perp, E>) has norm " +
        std::to_string(obs.norm) +
        "; over compact-operator algebras no phi-map extension exists");
  }
  if (!is_phi_map(map, phi, tol).holds) {
    throw PreconditionError("canonical_compacts_extension: Phi is not a phi-map");
  }
  // Coordinates along the basis F (+) F^perp, keeping only the F part.
  const ConcreteModule split = direct_sum(f, obs.complement, tol);
  const auto nf = static_cast<Eigen::Index>(f.dimension());
  ModuleMap gamma = ModuleMap::from_function(
      e, map.h1_dim(), map.h2_dim(), [&](const ComplexMatrix& x) {
        const SpanCoordinates c = split.coordinates(x, tol);
        if (c.residual > tol.threshold(x.norm())) {
          throw NumericalError(
              "canonical_compacts_extension: F + F^perp does not span E");
        }
        ComplexMatrix out = ComplexMatrix::Zero(map.h2_dim(), map.h1_dim());
        for (Eigen::Index b = 0; b < nf; ++b) {
          out += c.coeffs(b) * map.values()[static_cast<std::size_t>(b)];
        }
        return out;
      });
  const PhiMapReport pm = is_phi_map(gamma, phi, tol);
  if (!pm.holds) {
    throw NumericalError("canonical_compacts_extension: Phi (+) 0 fails the "
                         "phi-map identity by " +
                         std::to_string(pm.worst_deviation));
  }
  const ExtensionResult engine = extend_semi_phi(map, e, phi, tol);
  double dev = 0.0;
  double scale = 1.0;
  for (std::size_t b = 0; b < e.dimension(); ++b) {
    dev = std::max(dev, (gamma.values()[b] - engine.phi_prime.values()[b]).norm());
    scale = std::max(scale, gamma.values()[b].norm());
  }
  if (dev > kCertifyRel * scale) {
    throw NumericalError(
        "canonical_compacts_extension: differs from the engine output by " +
        std::to_string(dev));
  }
  return gamma;
}

}  // namespace semiphi
