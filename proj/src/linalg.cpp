#include "gammahc/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gammahc/error.hpp"
#include "lattice.hpp"

namespace gammahc {

using detail::IntMat;
using detail::IntVec;

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

Integer lcm_of_denominators(const SparseMatrix& m) {
  Integer l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    }
  }
  return l;
}

// Integer columns of a matrix after ring normalization. Over Q the whole
// matrix is scaled by one positive integer, which preserves images, kernels
// and the membership tests used below.
std::vector<IntVec> integer_columns(const SparseMatrix& m, const GroundRing& ring) {
  const SparseMatrix r = m.reduced(ring);
  Integer scale = 1;
  if (ring.is_rationals()) scale = lcm_of_denominators(r);
  std::vector<IntVec> cols(r.cols(), IntVec(r.rows(), Integer(0)));
  for (std::size_t j = 0; j < r.cols(); ++j) {
    for (const auto& [i, v] : r.column(j)) {
      Scalar s = v * Scalar(scale);
      if (s.get_den() != 1) throw NotInteger("entry " + v.get_str() + " is not integral over " + ring.to_string());
      cols[j][i] = s.get_num();
    }
  }
  return cols;
}

SparseMatrix relations_or_empty(const SparseMatrix& rel, std::size_t dim) {
  if (rel.rows() == 0 && rel.cols() == 0) return SparseMatrix(dim, 0);
  if (rel.rows() != dim) throw DimensionMismatch("relation matrix has wrong row count");
  return rel;
}

struct Block {
  std::vector<std::size_t> mids;  // global mid coordinates
  std::vector<std::size_t> outs;  // global out coordinates
  std::vector<IntVec> d_out_cols;
  std::vector<IntVec> rel_out_cols;
  std::vector<IntVec> boundary_gens;  // d_in columns and mid relations
  bool has_relations = false;
};

struct Problem {
  std::size_t n = 0;
  std::size_t n_out = 0;
  std::vector<IntVec> d_in;
  std::vector<IntVec> d_out;
  std::vector<IntVec> rel_mid;
  std::vector<IntVec> rel_out;
};

Problem integer_problem(const PresentedSpot& spot, const GroundRing& ring) {
  Problem p;
  p.n = spot.d_out.cols();
  p.n_out = spot.d_out.rows();
  if (spot.d_in.rows() != p.n) throw DimensionMismatch("d_in target does not match d_out source");
  const SparseMatrix rel_mid = relations_or_empty(spot.rel_mid, p.n);
  const SparseMatrix rel_out = relations_or_empty(spot.rel_out, p.n_out);
  p.d_in = integer_columns(spot.d_in, ring);
  p.d_out = integer_columns(spot.d_out, ring);
  p.rel_mid = integer_columns(rel_mid, ring);
  p.rel_out = integer_columns(rel_out, ring);
  if (ring.is_modular()) {
    const Integer& m = ring.modulus();
    for (std::size_t i = 0; i < p.n; ++i) {
      IntVec e(p.n, Integer(0));
      e[i] = m;
      p.rel_mid.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < p.n_out; ++i) {
      IntVec e(p.n_out, Integer(0));
      e[i] = m;
      p.rel_out.push_back(std::move(e));
    }
  }
  return p;
}

std::vector<Block> split_blocks(const Problem& p) {
  UnionFind uf(p.n + p.n_out);
  auto link_column = [&](const IntVec& col, std::size_t offset) {
    std::size_t first = SIZE_MAX;
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == 0) continue;
      if (first == SIZE_MAX) {
        first = i;
      } else {
        uf.unite(offset + first, offset + i);
      }
    }
  };
  for (const auto& c : p.d_in) link_column(c, 0);
  for (const auto& c : p.rel_mid) link_column(c, 0);
  for (const auto& c : p.rel_out) link_column(c, p.n);
  for (std::size_t j = 0; j < p.n; ++j) {
    for (std::size_t i = 0; i < p.n_out; ++i) {
      if (p.d_out[j][i] != 0) uf.unite(j, p.n + i);
    }
  }

  std::map<std::size_t, std::size_t> block_of_root;
  std::vector<Block> blocks;
  std::vector<std::size_t> local(p.n + p.n_out, 0);
  std::vector<std::size_t> owner(p.n + p.n_out, SIZE_MAX);
  for (std::size_t v = 0; v < p.n; ++v) {
    const std::size_t root = uf.find(v);
    auto [it, fresh] = block_of_root.emplace(root, blocks.size());
    if (fresh) blocks.emplace_back();
    owner[v] = it->second;
    local[v] = blocks[it->second].mids.size();
    blocks[it->second].mids.push_back(v);
  }
  for (std::size_t i = 0; i < p.n_out; ++i) {
    auto it = block_of_root.find(uf.find(p.n + i));
    if (it == block_of_root.end()) continue;
    owner[p.n + i] = it->second;
    local[p.n + i] = blocks[it->second].outs.size();
    blocks[it->second].outs.push_back(i);
  }

  auto restrict_mid = [&](const IntVec& col, std::size_t& block) -> std::optional<IntVec> {
    block = SIZE_MAX;
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] != 0) {
        block = owner[i];
        break;
      }
    }
    if (block == SIZE_MAX) return std::nullopt;
    IntVec v(blocks[block].mids.size(), Integer(0));
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] != 0) v[local[i]] = col[i];
    }
    return v;
  };
  for (const auto& c : p.d_in) {
    std::size_t b;
    if (auto v = restrict_mid(c, b)) blocks[b].boundary_gens.push_back(std::move(*v));
  }
  for (const auto& c : p.rel_mid) {
    std::size_t b;
    if (auto v = restrict_mid(c, b)) {
      blocks[b].boundary_gens.push_back(std::move(*v));
      blocks[b].has_relations = true;
    }
  }
  for (auto& b : blocks) {
    for (std::size_t mid : b.mids) {
      IntVec v(b.outs.size(), Integer(0));
      for (std::size_t k = 0; k < b.outs.size(); ++k) v[k] = p.d_out[mid][b.outs[k]];
      b.d_out_cols.push_back(std::move(v));
    }
  }
  for (const auto& c : p.rel_out) {
    std::size_t b = SIZE_MAX;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) {
        b = owner[p.n + i];
        break;
      }
    }
    if (b == SIZE_MAX) continue;  // relation on coordinates no mid vector reaches
    IntVec v(blocks[b].outs.size(), Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0) v[local[p.n + i]] = c[i];
    }
    blocks[b].rel_out_cols.push_back(std::move(v));
    blocks[b].has_relations = true;
  }
  return blocks;
}

std::size_t int_rank(const std::vector<IntVec>& cols, std::size_t rows) {
  if (cols.empty() || rows == 0) return 0;
  return detail::echelon(cols, rows, false).lattice.rank();
}

// Smith diagonal entries of the homology of one block, padded with zeros for
// free summands.
IntVec block_diagonal(const Block& b) {
  const std::size_t n = b.mids.size();
  if (!b.has_relations) {
    // free terms: H = Z^(n - rank d_out - rank d_in) + torsion of coker d_in
    const std::size_t r_out = int_rank(b.d_out_cols, b.outs.size());
    IntVec diag;
    std::size_t r_in = 0;
    if (!b.boundary_gens.empty()) {
      IntMat rows(n, IntVec(b.boundary_gens.size(), Integer(0)));
      for (std::size_t j = 0; j < b.boundary_gens.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) rows[i][j] = b.boundary_gens[j][i];
      }
      auto s = detail::smith(std::move(rows), b.boundary_gens.size(), false);
      r_in = s.rank;
      for (std::size_t i = 0; i < s.rank; ++i) diag.push_back(s.S[i][i]);
    }
    if (r_in + r_out > n) throw CompositionNonzero("rank(d_in) + rank(d_out) exceeds the spot dimension");
    for (std::size_t i = 0; i < n - r_in - r_out; ++i) diag.emplace_back(0);
    return diag;
  }
  const auto lat = detail::preimage_lattice(b.d_out_cols, b.rel_out_cols, b.outs.size());
  return detail::quotient_diagonal(lat, b.boundary_gens);
}

void check_composition(const SparseMatrix& d_in, const SparseMatrix& d_out, const GroundRing& ring) {
  if (d_in.rows() != d_out.cols()) throw DimensionMismatch("d_in target does not match d_out source");
  const SparseMatrix comp = (d_out * d_in).reduced(ring);
  if (!comp.is_zero()) {
    for (std::size_t j = 0; j < comp.cols(); ++j) {
      if (!comp.column(j).empty()) {
        throw CompositionNonzero("d_out * d_in is nonzero on source basis vector " + std::to_string(j));
      }
    }
  }
}

}  // namespace

SmithForm snf(const SparseMatrix& m) {
  auto s = detail::smith(detail::to_int_rows(m), m.cols(), true);
  return SmithForm{detail::from_int_rows(s.U, m.rows()), detail::from_int_rows(s.S, m.cols()),
                   detail::from_int_rows(s.V, m.cols())};
}

PresentedSpot free_spot(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  return PresentedSpot{d_in, d_out, SparseMatrix(d_out.cols(), 0), SparseMatrix(d_out.rows(), 0)};
}

HomologyGroup homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const GroundRing& ring) {
  check_composition(d_in, d_out, ring);
  return presented_homology(free_spot(d_in, d_out), ring);
}

HomologyGroup presented_homology(const PresentedSpot& spot, const GroundRing& ring) {
  const Problem p = integer_problem(spot, ring);
  IntVec entries;
  for (const auto& b : split_blocks(p)) {
    auto d = block_diagonal(b);
    entries.insert(entries.end(), d.begin(), d.end());
  }
  return normalize_group(0, std::move(entries), ring);
}

std::map<int, HomologyGroup> filtered_homology(const PresentedSpot& spot, const std::vector<int>& labels,
                                               const GroundRing& ring) {
  const Problem p = integer_problem(spot, ring);
  if (labels.size() != p.n) throw DimensionMismatch("one filtration label per basis vector is required");
  std::map<int, IntVec> entries;
  for (int l : labels) entries[l];

  for (const auto& b : split_blocks(p)) {
    std::set<int> present;
    for (std::size_t mid : b.mids) present.insert(labels[mid]);
    if (present.size() == 1) {
      auto d = block_diagonal(b);
      auto& e = entries[*present.begin()];
      e.insert(e.end(), d.begin(), d.end());
      continue;
    }
    // F_c-cycles of the block, then successive quotients of (Z_c + B)
    const std::size_t n = b.mids.size();
    std::vector<IntVec> previous = b.boundary_gens;
    for (int c : present) {
      std::vector<std::size_t> keep;
      for (std::size_t k = 0; k < n; ++k) {
        if (labels[b.mids[k]] <= c) keep.push_back(k);
      }
      std::vector<IntVec> cols;
      for (std::size_t k : keep) cols.push_back(b.d_out_cols[k]);
      const auto z = detail::preimage_lattice(cols, b.rel_out_cols, b.outs.size());
      std::vector<IntVec> gens;
      for (const auto& v : z.basis) {
        IntVec full(n, Integer(0));
        for (std::size_t k = 0; k < keep.size(); ++k) full[keep[k]] = v[k];
        gens.push_back(std::move(full));
      }
      gens.insert(gens.end(), b.boundary_gens.begin(), b.boundary_gens.end());
      auto g1 = detail::echelon(gens, n, false).lattice;
      auto d = detail::quotient_diagonal(g1, previous);
      auto& e = entries[c];
      e.insert(e.end(), d.begin(), d.end());
      previous = g1.basis;
    }
  }
  std::map<int, HomologyGroup> out;
  for (auto& [c, e] : entries) out[c] = normalize_group(0, std::move(e), ring);
  return out;
}

HomologyBasis homology_generators(const SparseMatrix& d_in, const SparseMatrix& d_out, const GroundRing& ring) {
  check_composition(d_in, d_out, ring);
  const Problem p = integer_problem(free_spot(d_in, d_out), ring);
  const auto lat = detail::preimage_lattice(p.d_out, p.rel_out, p.n_out);
  std::vector<IntVec> sub = p.d_in;
  sub.insert(sub.end(), p.rel_mid.begin(), p.rel_mid.end());

  const std::size_t r = lat.rank();
  HomologyBasis out;
  if (r == 0) return out;
  IntMat c(r, IntVec(sub.size(), Integer(0)));
  for (std::size_t j = 0; j < sub.size(); ++j) {
    auto coords = lat.coordinates(sub[j]);
    if (!coords) throw CompositionNonzero("boundary is not a cycle");
    for (std::size_t i = 0; i < r; ++i) c[i][j] = (*coords)[i];
  }
  auto s = detail::smith(std::move(c), sub.size(), true);
  IntVec diag;
  for (std::size_t i = 0; i < r; ++i) {
    const Integer d = i < s.rank ? s.S[i][i] : Integer(0);
    diag.push_back(d);
    if (d == 1) continue;
    if (ring.is_rationals() && d != 0) continue;
    // generator = lattice basis * column i of U^{-1}
    IntVec rep(p.n, Integer(0));
    for (std::size_t k = 0; k < r; ++k) {
      const Integer& coef = s.U_inv[k][i];
      if (coef == 0) continue;
      for (std::size_t t = 0; t < p.n; ++t) rep[t] += coef * lat.basis[k][t];
    }
    if (ring.is_modular()) {
      for (auto& v : rep) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), ring.modulus().get_mpz_t());
    } else {
      auto lead = std::find_if(rep.begin(), rep.end(), [](const Integer& v) { return v != 0; });
      if (lead != rep.end() && *lead < 0) {
        for (auto& v : rep) v = -v;
      }
    }
    std::vector<Scalar> q;
    q.reserve(rep.size());
    for (auto& v : rep) q.emplace_back(v);
    out.representatives.push_back(std::move(q));
    Integer order = d;
    if (ring.is_modular() && d == ring.modulus()) order = 0;
    out.orders.push_back(order);
  }
  out.group = normalize_group(0, std::move(diag), ring);
  return out;
}

std::optional<std::vector<Scalar>> preimage(const SparseMatrix& m, const std::vector<Scalar>& b,
                                            const GroundRing& ring) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length does not match rows");
  const std::size_t n = m.cols();
  SparseMatrix system = m.reduced(ring);
  std::vector<Scalar> rhs;
  rhs.reserve(b.size());
  for (const auto& v : b) rhs.push_back(ring.normalize(v));
  if (ring.is_modular()) {
    SparseMatrix mi(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) mi.set(i, i, Scalar(ring.modulus()));
    system = system.hstack(mi);
  }
  if (ring.is_rationals()) {
    Integer l = lcm_of_denominators(system);
    for (const auto& v : rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    SparseMatrix scaled(system.rows(), system.cols());
    for (std::size_t j = 0; j < system.cols(); ++j) {
      for (const auto& [i, v] : system.column(j)) scaled.set(i, j, v * Scalar(l));
    }
    system = scaled;
    for (auto& v : rhs) v *= Scalar(l);
  }
  auto s = detail::smith(detail::to_int_rows(system), system.cols(), true);
  // S y = U b, x = V y
  std::vector<Scalar> ub(system.rows(), Scalar(0));
  for (std::size_t i = 0; i < system.rows(); ++i) {
    for (std::size_t k = 0; k < system.rows(); ++k) {
      if (s.U[i][k] != 0 && rhs[k] != 0) ub[i] += Scalar(s.U[i][k]) * rhs[k];
    }
  }
  std::vector<Scalar> y(system.cols(), Scalar(0));
  for (std::size_t i = 0; i < system.rows(); ++i) {
    if (i < s.rank) {
      Scalar q = ub[i] / Scalar(s.S[i][i]);
      if (!ring.is_rationals() && q.get_den() != 1) return std::nullopt;
      y[i] = q;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Scalar> x(n, Scalar(0));
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t k = 0; k < system.cols(); ++k) {
      if (s.V[t][k] != 0 && y[k] != 0) x[t] += Scalar(s.V[t][k]) * y[k];
    }
    x[t] = ring.normalize(x[t]);
  }
  return x;
}

SparseMatrix cycle_basis(const SparseMatrix& d_out, const SparseMatrix& rel_out, const GroundRing& ring) {
  const Problem p = integer_problem(PresentedSpot{SparseMatrix(d_out.cols(), 0), d_out,
                                                  SparseMatrix(d_out.cols(), 0), rel_out},
                                    ring);
  const auto lat = detail::preimage_lattice(p.d_out, p.rel_out, p.n_out);
  SparseMatrix out(p.n, lat.rank());
  for (std::size_t j = 0; j < lat.rank(); ++j) {
    for (std::size_t i = 0; i < p.n; ++i) {
      if (lat.basis[j][i] != 0) out.set(i, j, Scalar(lat.basis[j][i]));
    }
  }
  return out;
}

std::size_t matrix_rank(const SparseMatrix& m, const GroundRing& ring) {
  auto cols = integer_columns(m, ring);
  if (!ring.is_modular()) return int_rank(cols, m.rows());
  IntMat rows(m.rows(), IntVec(m.cols(), Integer(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i][j] = cols[j][i];
  }
  auto s = detail::smith(std::move(rows), m.cols(), false);
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (!mpz_divisible_p(s.S[i][i].get_mpz_t(), ring.modulus().get_mpz_t())) ++r;
  }
  return r;
}

}  // namespace gammahc
