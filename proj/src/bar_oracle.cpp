#include "gammahc/bar_oracle.hpp"

#include "gammahc/error.hpp"

namespace gammahc {

FiniteAlgebra::FiniteAlgebra(GroundRing ring, std::vector<std::string> labels, std::size_t unit,
                             std::vector<std::vector<std::vector<Scalar>>> table)
    : ring_(std::move(ring)), labels_(std::move(labels)), unit_(unit), table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (n == 0 || unit_ >= n) throw DimensionMismatch("algebra needs a unit basis vector");
  if (table_.size() != n) throw DimensionMismatch("structure constants have the wrong shape");
  for (auto& row : table_) {
    if (row.size() != n) throw DimensionMismatch("structure constants have the wrong shape");
    for (auto& v : row) {
      if (v.size() != n) throw DimensionMismatch("structure constants have the wrong shape");
      for (auto& c : v) c = ring_.normalize(c);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar want = i == j ? 1 : 0;
      if (table_[unit_][i][j] != want || table_[i][unit_][j] != want) {
        throw NotAssociative("basis vector " + labels_[unit_] + " is not a unit");
      }
      if (table_[i][j] != table_[j][i]) throw NotAssociative(labels_[i] + " and " + labels_[j] + " do not commute");
    }
  }
  // (e_i e_j) e_l = e_i (e_j e_l)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t t = 0; t < n; ++t) {
          Scalar left = 0, right = 0;
          for (std::size_t s = 0; s < n; ++s) {
            left += table_[i][j][s] * table_[s][l][t];
            right += table_[j][l][s] * table_[i][s][t];
          }
          if (ring_.normalize(left - right) != 0) {
            throw NotAssociative("(" + labels_[i] + "*" + labels_[j] + ")*" + labels_[l]);
          }
        }
      }
    }
  }
}

FiniteAlgebra FiniteAlgebra::from_presentation(const Presentation& p) {
  p.require_quasi_monic();
  const auto& k = p.ring();
  for (auto r : p.constant_relations()) {
    const Scalar c = k.normalize(p.relations()[r].begin()->second);
    if (c != 0) throw NotFlat("constant relation " + c.get_str() + " makes A a non-free k-module");
  }
  const auto basis = p.normal_monomials();
  std::map<Exponents, std::size_t> position;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    position[basis[i]] = i;
    labels.push_back(format_polynomial(Polynomial{{basis[i], Scalar(1)}}, p.variables()));
  }
  const std::size_t n = basis.size();
  std::vector<std::vector<std::vector<Scalar>>> table(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e = basis[i];
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += basis[j][v];
      for (const auto& [m, c] : p.reduce(Polynomial{{e, Scalar(1)}})) table[i][j][position.at(m)] = c;
    }
  }
  const std::size_t unit = position.at(Exponents(p.variables().size(), 0));
  return FiniteAlgebra(k, std::move(labels), unit, std::move(table));
}

std::vector<std::size_t> FiniteAlgebra::reduced_basis() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i != unit_) out.push_back(i);
  }
  return out;
}

FiniteAlgebra FiniteAlgebra::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t n = rank();
  if (perm.size() != n) throw DimensionMismatch("permutation length");
  std::vector<std::string> labels(n);
  std::vector<std::vector<std::vector<Scalar>>> table(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = labels_[i];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < n; ++t) table[perm[i]][perm[j]][perm[t]] = table_[i][j][t];
    }
  }
  return FiniteAlgebra(ring_, std::move(labels), perm[unit_], std::move(table));
}

namespace {

// Tensors a_0 (x) a_1 .. a_q: a_0 a basis index of A, a_i (i >= 1) indices
// into the reduced basis; encoded in mixed radix with a_0 most significant.
struct TensorCodec {
  std::size_t n;  // rank A
  std::size_t r;  // rank A/k

  std::size_t size(int q) const {
    std::size_t s = n;
    for (int i = 0; i < q; ++i) s *= r;
    return s;
  }
  std::size_t encode(const std::vector<std::size_t>& t) const {
    std::size_t code = t[0];
    for (std::size_t i = 1; i < t.size(); ++i) code = code * r + t[i];
    return code;
  }
  std::vector<std::size_t> decode(std::size_t code, int q) const {
    std::vector<std::size_t> t(q + 1);
    for (int i = q; i >= 1; --i) {
      t[i] = code % r;
      code /= r;
    }
    t[0] = code;
    return t;
  }
};

}  // namespace

DoubleMixedComplex cyclic_mixed(const FiniteAlgebra& a, int n_max) {
  const int top = n_max + 1;
  const auto red = a.reduced_basis();
  std::vector<std::size_t> red_pos(a.rank(), 0);
  for (std::size_t i = 0; i < red.size(); ++i) red_pos[red[i]] = i;
  const TensorCodec codec{a.rank(), red.size()};
  const auto& k = a.ring();

  DoubleMixedComplex m(k, top);
  for (int q = 0; q <= top; ++q) m.set_slice({0, q}, codec.size(q));

  for (int q = 1; q <= top; ++q) {
    SparseMatrix b(codec.size(q - 1), codec.size(q));
    for (std::size_t col = 0; col < codec.size(q); ++col) {
      const auto t = codec.decode(col, q);
      auto full = [&](std::size_t i) { return i == 0 ? t[0] : red[t[i]]; };
      // a_0 a_1 (x) a_2 ..
      for (std::size_t c = 0; c < a.rank(); ++c) {
        const Scalar& v = a.product(t[0], red[t[1]])[c];
        if (v == 0) continue;
        std::vector<std::size_t> s{c};
        s.insert(s.end(), t.begin() + 2, t.end());
        b.add(codec.encode(s), col, v);
      }
      for (int i = 1; i < q; ++i) {
        const auto& prod = a.product(full(i), full(i + 1));
        for (std::size_t c : red) {
          if (prod[c] == 0) continue;
          std::vector<std::size_t> s(t.begin(), t.begin() + i);
          s.push_back(red_pos[c]);
          s.insert(s.end(), t.begin() + i + 2, t.end());
          b.add(codec.encode(s), col, i % 2 ? -prod[c] : prod[c]);
        }
      }
      // a_q a_0 (x) a_1 .. a_{q-1}
      const auto& last = a.product(full(q), t[0]);
      for (std::size_t c = 0; c < a.rank(); ++c) {
        if (last[c] == 0) continue;
        std::vector<std::size_t> s{c};
        s.insert(s.end(), t.begin() + 1, t.end() - 1);
        b.add(codec.encode(s), col, q % 2 ? -last[c] : last[c]);
      }
    }
    m.set_D({0, q}, b.reduced(k));
  }

  for (int q = 0; q < top; ++q) {
    SparseMatrix bb(codec.size(q + 1), codec.size(q));
    for (std::size_t col = 0; col < codec.size(q); ++col) {
      const auto t = codec.decode(col, q);
      if (t[0] == a.unit()) continue;
      std::vector<std::size_t> cyc{red_pos[t[0]]};
      cyc.insert(cyc.end(), t.begin() + 1, t.end());
      for (int i = 0; i <= q; ++i) {
        std::vector<std::size_t> s{a.unit()};
        for (int j = 0; j <= q; ++j) s.push_back(cyc[(i + j) % (q + 1)]);
        bb.add(codec.encode(s), col, (q * i) % 2 ? -1 : 1);
      }
    }
    m.set_B({0, q}, bb.reduced(k));
  }
  for (int q = 0; q <= top; ++q) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < codec.size(q); ++c) {
      const auto t = codec.decode(c, q);
      std::string s = a.labels()[t[0]];
      for (int i = 1; i <= q; ++i) s += "|" + a.labels()[red[t[i]]];
      names.push_back(s);
    }
    m.labels[{0, q}] = std::move(names);
  }
  return m;
}

std::vector<HomologyGroup> hh_oracle(const FiniteAlgebra& a, int n_max) {
  return hochschild_total(cyclic_mixed(a, n_max), n_max);
}

std::vector<HomologyGroup> hc_oracle(const FiniteAlgebra& a, int n_max) {
  return cyclic_total(cyclic_mixed(a, n_max), n_max);
}

}  // namespace gammahc
