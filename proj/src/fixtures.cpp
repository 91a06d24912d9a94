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

#include "semiphi/fixtures.hpp"

#include <algorithm>

#include "semiphi/error.hpp"

namespace semiphi {

namespace {

Eigen::Index uniform_int(Rng& rng, Eigen::Index lo, Eigen::Index hi) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<Eigen::Index> random_composition(Rng& rng, Eigen::Index total) {
  std::vector<Eigen::Index> parts;
  Eigen::Index left = total;
  while (left > 0) {
    const Eigen::Index n = uniform_int(rng, 1, left);
    parts.push_back(n);
    left -= n;
  }
  return parts;
}

// Elements o e_j^T for every column o of `rows` and every column j of block b.
void append_block_elements(const BlockAlgebra& a, std::size_t b,
                           const ComplexMatrix& rows,
                           std::vector<ComplexMatrix>& out) {
  const Eigen::Index q = a.ambient_dim();
  const Eigen::Index off = a.block_offset(b);
  for (Eigen::Index i = 0; i < rows.cols(); ++i) {
    for (Eigen::Index j = 0; j < a.blocks()[b]; ++j) {
      ComplexMatrix x = ComplexMatrix::Zero(rows.rows(), q);
      x.col(off + j) = rows.col(i);
      out.push_back(std::move(x));
    }
  }
}

// Mutually orthogonal row spaces R_b (p x d_b) and subspaces S_b of them.
struct BlockLayout {
  BlockAlgebra algebra;
  Eigen::Index row_dim;
  std::vector<ComplexMatrix> row_spaces;
  std::vector<ComplexMatrix> sub_spaces;

  ConcreteModule module(const std::vector<ComplexMatrix>& spaces) const {
    std::vector<ComplexMatrix> basis;
    for (std::size_t b = 0; b < spaces.size(); ++b) {
      append_block_elements(algebra, b, spaces[b], basis);
    }
    return ConcreteModule(algebra, row_dim, std::move(basis));
  }
};

BlockLayout random_layout(Rng& rng, const FixtureShape& shape,
                          bool require_full_block) {
  for (;;) {
    const Eigen::Index q = uniform_int(rng, 1, shape.max_ambient);
    BlockAlgebra a(random_composition(rng, q));
    const Eigen::Index p = uniform_int(rng, 1, shape.max_row_dim);
    const std::size_t nb = a.blocks().size();
    std::vector<Eigen::Index> d(nb), s(nb);
    Eigen::Index rows_used = 0;
    std::size_t dim = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      d[b] = uniform_int(rng, 0, 2);
      s[b] = uniform_int(rng, 0, d[b]);
      rows_used += d[b];
      dim += static_cast<std::size_t>(d[b] * a.blocks()[b]);
    }
    if (dim == 0 || dim > shape.max_dim || rows_used > p) continue;
    bool has_full = false;
    for (std::size_t b = 0; b < nb; ++b) has_full |= (d[b] > 0 && s[b] == d[b]);
    if (require_full_block && !has_full) continue;

    const ComplexMatrix u = random_unitary(rng, p);
    BlockLayout layout{a, p, {}, {}};
    Eigen::Index col = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      const ComplexMatrix r = u.middleCols(col, d[b]);
      col += d[b];
      layout.row_spaces.push_back(r);
      layout.sub_spaces.push_back(s[b] == d[b]
                                      ? r
                                      : ComplexMatrix(r * random_isometry(
                                                              rng, d[b], s[b])));
    }
    return layout;
  }
}

// Phi = w o Phi_phi on f, with Phi_phi the KSGNS map of phi over f.
ModuleMap through_ksgns(const CPMap& phi, const ConcreteModule& f,
                        const ComplexMatrix& w) {
  const KsgnsResult k = ksgns(phi, f);
  std::vector<ComplexMatrix> values;
  values.reserve(k.map.values().size());
  for (const auto& v : k.map.values()) values.push_back(w * v);
  return ModuleMap(f, phi.target_dim(), w.rows(), std::move(values));
}

}  // namespace

ComplexMatrix random_complex_matrix(Rng& rng, Eigen::Index rows,
                                    Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  const ComplexMatrix z = random_complex_matrix(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  if (cols > rows) throw ShapeError("random_isometry: cols exceeds rows");
  return random_unitary(rng, rows).leftCols(cols);
}

std::vector<ComplexMatrix> random_kraus(Rng& rng, Eigen::Index m,
                                        Eigen::Index q, int count) {
  std::vector<ComplexMatrix> out;
  for (int t = 0; t < count; ++t) {
    out.push_back(random_complex_matrix(rng, m, q) /
                  std::sqrt(static_cast<double>(count * q)));
  }
  return out;
}

ExtensionFixture example_2_1(Eigen::Index n) {
  if (n < 1) throw ValidationError("example_2_1: n must be >= 1");
  const BlockAlgebra a = BlockAlgebra::full(n);
  std::vector<ComplexMatrix> top, bottom;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ComplexMatrix t = ComplexMatrix::Zero(2 * n, n);
      t(i, j) = 1.0;
      top.push_back(t);
      ComplexMatrix s = ComplexMatrix::Zero(2 * n, n);
      s(n + i, j) = 1.0;
      bottom.push_back(s);
    }
  }
  std::vector<ComplexMatrix> all = top;
  all.insert(all.end(), bottom.begin(), bottom.end());
  ConcreteModule e(a, 2 * n, std::move(all));
  ConcreteModule f(a, 2 * n, top);
  CPMap phi = CPMap::identity(a);
  ModuleMap map = ModuleMap::from_function(
      f, n, n, [n](const ComplexMatrix& x) -> ComplexMatrix {
        return x.topRows(n);
      });
  return {e, f, phi, {ComplexMatrix::Identity(n, n)}, map};
}

ExtensionFixture compacts_2_6(Eigen::Index n) {
  if (n < 1) throw ValidationError("compacts_2_6: n must be >= 1");
  const BlockAlgebra a({n, n});
  std::vector<ComplexMatrix> first, all;
  for (const auto& u : a.units()) {
    ComplexMatrix x = ComplexMatrix::Zero(2 * n, 2 * n);
    x(u.row, u.col) = 1.0;
    if (u.block == 0) first.push_back(x);
    all.push_back(std::move(x));
  }
  ConcreteModule e(a, 2 * n, std::move(all));
  ConcreteModule f(a, 2 * n, std::move(first));
  ComplexMatrix k = ComplexMatrix::Zero(n, 2 * n);
  k.leftCols(n) = ComplexMatrix::Identity(n, n);
  std::vector<ComplexMatrix> kraus{k};
  CPMap phi = CPMap::from_kraus(a, kraus);
  ModuleMap map = ModuleMap::from_function(
      f, n, n, [n](const ComplexMatrix& x) -> ComplexMatrix {
        return x.topLeftCorner(n, n);
      });
  return {e, f, phi, kraus, map};
}

ExtensionFixture random_extension_fixture(Rng& rng, double contraction_norm,
                                          const FixtureShape& shape) {
  const BlockLayout layout = random_layout(rng, shape, false);
  ConcreteModule e = layout.module(layout.row_spaces);
  ConcreteModule f = layout.module(layout.sub_spaces);
  const Eigen::Index q = layout.algebra.ambient_dim();
  const Eigen::Index m = uniform_int(rng, 1, shape.max_target);
  const int count = static_cast<int>(uniform_int(rng, 1, 3));
  std::vector<ComplexMatrix> kraus = random_kraus(rng, m, q, count);
  CPMap phi = CPMap::from_kraus(layout.algebra, kraus);

  const Eigen::Index h = ksgns(phi, f).map.h2_dim();
  const Eigen::Index k = uniform_int(rng, 1, shape.max_codomain);
  ComplexMatrix w = random_complex_matrix(rng, k, h);
  if (h > 0) {
    const double norm = operator_norm(w);
    if (norm > 0.0) w *= contraction_norm / norm;
  }
  ModuleMap map = h > 0 ? through_ksgns(phi, f, w)
                        : ModuleMap::zero(f, m, k);
  return {std::move(e), std::move(f), std::move(phi), std::move(kraus),
          std::move(map)};
}

ExtensionFixture random_vanishing_fixture(Rng& rng, const FixtureShape& shape) {
  for (;;) {
    const BlockLayout layout = random_layout(rng, shape, true);
    ConcreteModule e = layout.module(layout.row_spaces);
    ConcreteModule f = layout.module(layout.sub_spaces);
    const BlockAlgebra& a = layout.algebra;
    const Eigen::Index m = uniform_int(rng, 1, shape.max_target);
    const int count = static_cast<int>(uniform_int(rng, 1, 3));
    std::vector<ComplexMatrix> kraus =
        random_kraus(rng, m, a.ambient_dim(), count);
    for (std::size_t b = 0; b < a.blocks().size(); ++b) {
      if (layout.sub_spaces[b].cols() == layout.row_spaces[b].cols()) continue;
      for (auto& kt : kraus) {
        kt.middleCols(a.block_offset(b), a.blocks()[b]).setZero();
      }
    }
    CPMap phi = CPMap::from_kraus(a, kraus);
    const Eigen::Index h = ksgns(phi, f).map.h2_dim();
    if (h == 0) continue;
    ModuleMap map = through_ksgns(phi, f, random_unitary(rng, h));
    return {std::move(e), std::move(f), std::move(phi), std::move(kraus),
            std::move(map)};
  }
}

ContainmentFixture random_containment_fixture(Rng& rng, Eigen::Index n) {
  for (;;) {
    // B: ambient q_b <= 4.  C: one block per chosen B-block, placed at a
    // random offset inside it.
    const Eigen::Index qb = uniform_int(rng, 1, 4);
    BlockAlgebra b_alg(random_composition(rng, qb));
    std::vector<Eigen::Index> c_blocks, offsets;
    for (std::size_t b = 0; b < b_alg.blocks().size(); ++b) {
      if (uniform_int(rng, 0, 2) == 0) continue;
      const Eigen::Index nb = b_alg.blocks()[b];
      const Eigen::Index nc = uniform_int(rng, 1, nb);
      c_blocks.push_back(nc);
      offsets.push_back(b_alg.block_offset(b) + uniform_int(rng, 0, nb - nc));
    }
    if (c_blocks.empty()) continue;
    BlockAlgebra c_alg(c_blocks);

    // G rows: one row direction per C-block (orthonormal in C^{p_G}).
    const Eigen::Index pg = static_cast<Eigen::Index>(c_blocks.size());
    const ComplexMatrix tg = random_unitary(rng, pg);
    std::vector<ComplexMatrix> g_basis;
    for (std::size_t c = 0; c < c_blocks.size(); ++c) {
      append_block_elements(c_alg, c, tg.col(static_cast<Eigen::Index>(c)),
                            g_basis);
    }
    if (g_basis.size() > 4) continue;
    ConcreteModule g(c_alg, pg, std::move(g_basis));

    // F rows: R T_c for the C-blocks inside B-block b, plus an optional
    // extra direction orthogonal to R's range.
    const Eigen::Index extra = uniform_int(rng, 0, 1);
    const Eigen::Index pf = pg + extra;
    const ComplexMatrix u = random_unitary(rng, pf);
    ModuleEmbedding emb;
    emb.block_offsets = offsets;
    emb.row_map = u.leftCols(pg);
    std::vector<std::vector<ComplexVector>> rows(b_alg.blocks().size());
    for (std::size_t c = 0; c < c_blocks.size(); ++c) {
      rows[b_alg.block_of(offsets[c])].push_back(
          emb.row_map * tg.col(static_cast<Eigen::Index>(c)));
    }
    if (extra > 0) {
      const std::size_t b = static_cast<std::size_t>(
          uniform_int(rng, 0, static_cast<Eigen::Index>(rows.size()) - 1));
      rows[b].push_back(u.col(pg));
    }
    std::vector<ComplexMatrix> f_basis;
    for (std::size_t b = 0; b < rows.size(); ++b) {
      ComplexMatrix r(pf, static_cast<Eigen::Index>(rows[b].size()));
      for (std::size_t i = 0; i < rows[b].size(); ++i) {
        r.col(static_cast<Eigen::Index>(i)) = rows[b][i];
      }
      append_block_elements(b_alg, b, r, f_basis);
    }
    ConcreteModule f(b_alg, pf, std::move(f_basis));

    const int count = static_cast<int>(uniform_int(rng, 1, 2));
    CPMap phi = CPMap::from_kraus(
        c_alg, random_kraus(rng, 1, c_alg.ambient_dim(), count));
    const Eigen::Index h = ksgns(phi, g).map.h2_dim();
    ComplexMatrix w = random_complex_matrix(rng, n, h);
    if (h > 0) w *= uniform_real(rng, 0.3, 1.0) / operator_norm(w);
    ModuleMap map = h > 0 ? through_ksgns(phi, g, w) : ModuleMap::zero(g, 1, n);
    return {std::move(g), std::move(f), std::move(emb), std::move(phi),
            std::move(map)};
  }
}

}  // namespace semiphi
