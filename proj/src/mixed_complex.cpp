#include "gammahc/mixed_complex.hpp"

#include <sstream>

#include "gammahc/error.hpp"

namespace gammahc {

namespace {

std::string slice_name(Bidegree s) {
  return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

void place(SparseMatrix& big, const SparseMatrix& block, std::size_t row0, std::size_t col0) {
  for (std::size_t j = 0; j < block.cols(); ++j) {
    for (const auto& [i, v] : block.column(j)) big.add(row0 + i, col0 + j, v);
  }
}

// a composite that must vanish in the target slice
bool vanishes(const SparseMatrix& comp, const SparseMatrix& rel, const GroundRing& ring) {
  const SparseMatrix r = comp.reduced(ring);
  if (r.is_zero()) return true;
  if (rel.cols() == 0) return false;
  for (std::size_t j = 0; j < r.cols(); ++j) {
    if (r.column(j).empty()) continue;
    std::vector<Scalar> b(r.rows(), Scalar(0));
    for (const auto& [i, v] : r.column(j)) b[i] = v;
    if (!preimage(rel, b, ring)) return false;
  }
  return true;
}

struct Block {
  int copy;
  Bidegree slice;
  std::size_t offset;
  std::size_t dim;
};

struct Layout {
  std::vector<Block> blocks;
  std::size_t size = 0;

  const Block* find(int copy, Bidegree s) const {
    for (const auto& b : blocks) {
      if (b.copy == copy && b.slice == s) return &b;
    }
    return nullptr;
  }
};

Layout layout(const DoubleMixedComplex& m, int n, TotalMode mode) {
  Layout l;
  if (n < 0) return l;
  const int copies = mode == TotalMode::Cyclic ? n / 2 : 0;
  for (int i = 0; i <= copies; ++i) {
    for (const auto& s : m.slices_of_total(n - 2 * i)) {
      l.blocks.push_back({i, s, l.size, m.dim(s)});
      l.size += m.dim(s);
    }
  }
  return l;
}

// total differential Tot_n -> Tot_{n-1}
SparseMatrix total_differential(const DoubleMixedComplex& m, const Layout& src, const Layout& dst) {
  SparseMatrix out(dst.size, src.size);
  for (const auto& b : src.blocks) {
    const auto [p, q] = b.slice;
    if (b.dim == 0) continue;
    if (q >= 1) {
      if (const auto* t = dst.find(b.copy, {p, q - 1})) place(out, m.D(b.slice), t->offset, b.offset);
    }
    if (p >= 1) {
      if (const auto* t = dst.find(b.copy, {p - 1, q})) place(out, m.partial(b.slice), t->offset, b.offset);
    }
    if (b.copy >= 1) {
      if (const auto* t = dst.find(b.copy - 1, {p, q + 1})) place(out, m.B(b.slice), t->offset, b.offset);
    }
  }
  return out;
}

SparseMatrix total_relations(const DoubleMixedComplex& m, const Layout& l) {
  std::vector<std::pair<std::size_t, SparseMatrix>> parts;
  std::size_t cols = 0;
  for (const auto& b : l.blocks) {
    auto r = m.relations(b.slice);
    cols += r.cols();
    parts.emplace_back(b.offset, std::move(r));
  }
  SparseMatrix out(l.size, cols);
  std::size_t c = 0;
  for (const auto& [off, r] : parts) {
    place(out, r, off, c);
    c += r.cols();
  }
  return out;
}

void require_window(const DoubleMixedComplex& m, int n_max) {
  if (n_max + 1 > m.top_degree()) {
    throw WindowTooSmall("degree " + std::to_string(n_max) + " needs a complex built through total degree " +
                         std::to_string(n_max + 1) + ", have " + std::to_string(m.top_degree()));
  }
}

}  // namespace

void DoubleMixedComplex::set_slice(Bidegree s, std::size_t dim, std::optional<SparseMatrix> relations) {
  if (s.first < 0 || s.second < 0 || s.first + s.second > top_) {
    throw DimensionMismatch("slice " + slice_name(s) + " outside the window");
  }
  dims_[s] = dim;
  if (relations && relations->cols() > 0) {
    if (relations->rows() != dim) throw DimensionMismatch("relations of slice " + slice_name(s));
    rels_[s] = std::move(*relations);
  } else {
    rels_.erase(s);
  }
}

std::size_t DoubleMixedComplex::dim(Bidegree s) const {
  auto it = dims_.find(s);
  return it == dims_.end() ? 0 : it->second;
}

SparseMatrix DoubleMixedComplex::relations(Bidegree s) const {
  auto it = rels_.find(s);
  return it == rels_.end() ? SparseMatrix(dim(s), 0) : it->second;
}

bool DoubleMixedComplex::is_free(Bidegree s) const { return rels_.find(s) == rels_.end(); }

namespace {

void check_shape(const SparseMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

void DoubleMixedComplex::set_D(Bidegree s, SparseMatrix m) {
  check_shape(m, dim({s.first, s.second - 1}), dim(s), "D from " + slice_name(s));
  D_[s] = std::move(m);
}

void DoubleMixedComplex::set_partial(Bidegree s, SparseMatrix m) {
  check_shape(m, dim({s.first - 1, s.second}), dim(s), "d from " + slice_name(s));
  partial_[s] = std::move(m);
}

void DoubleMixedComplex::set_B(Bidegree s, SparseMatrix m) {
  check_shape(m, dim({s.first, s.second + 1}), dim(s), "B from " + slice_name(s));
  B_[s] = std::move(m);
}

SparseMatrix DoubleMixedComplex::lookup(const std::map<Bidegree, SparseMatrix>& maps, Bidegree source,
                                        Bidegree target) const {
  auto it = maps.find(source);
  if (it != maps.end()) return it->second;
  return SparseMatrix(dim(target), dim(source));
}

SparseMatrix DoubleMixedComplex::D(Bidegree s) const { return lookup(D_, s, {s.first, s.second - 1}); }
SparseMatrix DoubleMixedComplex::partial(Bidegree s) const { return lookup(partial_, s, {s.first - 1, s.second}); }
SparseMatrix DoubleMixedComplex::B(Bidegree s) const { return lookup(B_, s, {s.first, s.second + 1}); }

std::vector<Bidegree> DoubleMixedComplex::slices_of_total(int n) const {
  std::vector<Bidegree> out;
  if (n < 0 || n > top_) return out;
  for (int p = 0; p <= n; ++p) out.push_back({p, n - p});
  return out;
}

ValidationReport validate(const DoubleMixedComplex& m) {
  ValidationReport r;
  const auto& k = m.ring();
  auto check = [&](const SparseMatrix& comp, Bidegree target, const std::string& name, Bidegree s) {
    ++r.checks;
    if (!r.ok) return;
    if (!vanishes(comp, m.relations(target), k)) {
      r.ok = false;
      r.failure = name + " is nonzero on slice " + slice_name(s);
    }
  };
  const int top = m.top_degree();
  for (int n = 0; n <= top; ++n) {
    for (const auto& s : m.slices_of_total(n)) {
      const auto [p, q] = s;
      if (q >= 2) check(m.D({p, q - 1}) * m.D(s), {p, q - 2}, "D^2", s);
      if (p >= 2) check(m.partial({p - 1, q}) * m.partial(s), {p - 2, q}, "d^2", s);
      if (p >= 1 && q >= 1) {
        check(m.D({p - 1, q}) * m.partial(s) + m.partial({p, q - 1}) * m.D(s), {p - 1, q - 1}, "Dd + dD", s);
      }
      if (n <= top - 2) check(m.B({p, q + 1}) * m.B(s), {p, q + 2}, "B^2", s);
      if (n <= top - 1) {
        if (p >= 1) {
          check(m.B({p - 1, q}) * m.partial(s) + m.partial({p, q + 1}) * m.B(s), {p - 1, q + 1}, "Bd + dB", s);
        }
        SparseMatrix db = m.D({p, q + 1}) * m.B(s);
        if (q >= 1) db = db + m.B({p, q - 1}) * m.D(s);
        check(db, s, "DB + BD", s);
      }
    }
  }
  return r;
}

TotalSpot total_spot(const DoubleMixedComplex& m, int n, TotalMode mode) {
  if (n + 1 > m.top_degree()) require_window(m, n);
  const Layout above = layout(m, n + 1, mode);
  const Layout here = layout(m, n, mode);
  const Layout below = layout(m, n - 1, mode);
  TotalSpot out;
  out.spot.d_in = total_differential(m, above, here);
  out.spot.d_out = total_differential(m, here, below);
  out.spot.rel_mid = total_relations(m, here);
  out.spot.rel_out = total_relations(m, below);
  out.columns.resize(here.size);
  for (const auto& b : here.blocks) {
    const int column = b.slice.first + (mode == TotalMode::Cyclic ? b.copy : 0);
    for (std::size_t i = 0; i < b.dim; ++i) out.columns[b.offset + i] = column;
  }
  return out;
}

namespace {

std::vector<HomologyGroup> totals(const DoubleMixedComplex& m, int n_max, TotalMode mode) {
  require_window(m, n_max);
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(presented_homology(total_spot(m, n, mode).spot, m.ring()));
  return out;
}

}  // namespace

std::vector<HomologyGroup> hochschild_total(const DoubleMixedComplex& m, int n_max) {
  return totals(m, n_max, TotalMode::Hochschild);
}

std::vector<HomologyGroup> cyclic_total(const DoubleMixedComplex& m, int n_max) {
  return totals(m, n_max, TotalMode::Cyclic);
}

FilteredGroups filtration_layers(const DoubleMixedComplex& m, int n_max, TotalMode mode) {
  require_window(m, n_max);
  FilteredGroups out;
  for (int n = 0; n <= n_max; ++n) {
    const auto t = total_spot(m, n, mode);
    out.total.push_back(presented_homology(t.spot, m.ring()));
    std::map<int, HomologyGroup> layers;
    for (auto& [column, g] : filtered_homology(t.spot, t.columns, m.ring())) layers[n - column] = g;
    out.layers.push_back(std::move(layers));
  }
  return out;
}

DoubleMixedComplex e1_term(const DoubleMixedComplex& m) {
  if (!m.has_D()) return m;
  const auto& k = m.ring();
  const GroundRing coord_ring = k.is_rationals() ? k : GroundRing::integers();
  const int top = m.top_degree();
  std::map<Bidegree, SparseMatrix> cycles;
  DoubleMixedComplex out(k, top);
  auto coordinates = [&](const SparseMatrix& basis, const SparseMatrix& vectors, const std::string& what) {
    SparseMatrix c(basis.cols(), vectors.cols());
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
      std::vector<Scalar> b(vectors.rows(), Scalar(0));
      for (const auto& [i, v] : vectors.column(j)) b[i] = v;
      auto x = preimage(basis, b, coord_ring);
      if (!x) throw CompositionNonzero(what + " does not land in the cycles");
      for (std::size_t i = 0; i < x->size(); ++i) {
        if ((*x)[i] != 0) c.set(i, j, (*x)[i]);
      }
    }
    return c;
  };
  for (int n = 0; n <= top; ++n) {
    for (const auto& s : m.slices_of_total(n)) {
      const auto [p, q] = s;
      SparseMatrix z = cycle_basis(m.D(s), m.relations({p, q - 1}), k);
      // boundaries: D from above (when inside the window) plus relations
      SparseMatrix gens = m.relations(s);
      if (n + 1 <= top) gens = m.D({p, q + 1}).hstack(gens);
      SparseMatrix rel = coordinates(z, gens, "D-boundary of slice " + slice_name(s));
      if (k.is_modular()) {
        SparseMatrix mi(m.dim(s), m.dim(s));
        for (std::size_t i = 0; i < m.dim(s); ++i) mi.set(i, i, Scalar(k.modulus()));
        rel = rel.hstack(coordinates(z, mi, "modulus"));
      }
      out.set_slice(s, z.cols(), rel);
      cycles.emplace(s, std::move(z));
    }
  }
  for (int n = 0; n <= top; ++n) {
    for (const auto& s : m.slices_of_total(n)) {
      const auto [p, q] = s;
      const SparseMatrix& z = cycles.at(s);
      if (p >= 1) {
        out.set_partial(s, coordinates(cycles.at({p - 1, q}), m.partial(s) * z, "d of slice " + slice_name(s)));
      }
      if (n + 1 <= top) {
        out.set_B(s, coordinates(cycles.at({p, q + 1}), m.B(s) * z, "B of slice " + slice_name(s)));
      }
    }
  }
  out.labels.clear();
  return out;
}

}  // namespace gammahc
