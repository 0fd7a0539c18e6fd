#include "gammahc/crystalline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "gammahc/error.hpp"

namespace gammahc {

std::uint32_t CrystalWord::weight() const {
  std::uint32_t w = 0;
  for (auto x : q) w += x;
  return w;
}

bool CrystalWord::operator<(const CrystalWord& o) const {
  const auto wa = weight(), wb = o.weight();
  if (wa != wb) return wa < wb;
  return std::tie(q, forms, alpha) < std::tie(o.q, o.forms, o.alpha);
}

bool CrystalWord::operator==(const CrystalWord& o) const {
  return alpha == o.alpha && q == o.q && forms == o.forms;
}

namespace {

void add_to(CrystalElement& e, const CrystalWord& w, const Scalar& c, const GroundRing& k) {
  const Scalar v = k.normalize(e[w] + c);
  if (v == 0) {
    e.erase(w);
  } else {
    e[w] = v;
  }
}

// dx_i ^ dx_J: sign and the merged index list, or nullopt when i is in J
std::optional<std::pair<int, std::vector<std::uint32_t>>> wedge_one(std::uint32_t i,
                                                                     const std::vector<std::uint32_t>& forms) {
  int sign = 1;
  std::vector<std::uint32_t> out;
  bool placed = false;
  for (auto j : forms) {
    if (j == i) return std::nullopt;
    if (j < i) {
      sign = -sign;
    } else if (!placed) {
      out.push_back(i);
      placed = true;
    }
    out.push_back(j);
  }
  if (!placed) out.push_back(i);
  return std::make_pair(sign, out);
}

}  // namespace

Envelope::Envelope(Presentation p) : p_(std::move(p)) {
  p_.require_quasi_monic();
  constants_.assign(p_.relations().size(), std::nullopt);
  for (auto k : p_.constant_relations()) {
    const auto& f = p_.relations()[k];
    constants_[k] = f.empty() ? Scalar(0) : f.begin()->second;
  }
  normal_ = p_.normal_monomials();
}

CrystalWord Envelope::word(const Exponents& alpha, const std::vector<std::uint32_t>& q,
                           const std::vector<std::uint32_t>& forms) const {
  CrystalWord w{alpha, q, forms};
  if (w.alpha.empty()) w.alpha.assign(num_variables(), 0);
  if (w.q.empty()) w.q.assign(num_relations(), 0);
  if (w.alpha.size() != num_variables() || w.q.size() != num_relations()) {
    throw DimensionMismatch("word does not match the presentation");
  }
  if (!std::is_sorted(w.forms.begin(), w.forms.end()) ||
      std::adjacent_find(w.forms.begin(), w.forms.end()) != w.forms.end()) {
    throw DimensionMismatch("form indices must increase strictly");
  }
  return w;
}

CrystalElement Envelope::normalize(const CrystalElement& e) const {
  const auto& k = ring();
  const auto& lead = p_.require_quasi_monic();
  auto is_normal = [&](const Exponents& a) {
    for (const auto& l : lead) {
      if (a[l.variable] >= l.power) return false;
    }
    return true;
  };
  CrystalElement out;
  std::vector<std::pair<CrystalWord, Scalar>> work(e.begin(), e.end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    c = k.normalize(c);
    if (c == 0) continue;
    if (is_normal(w.alpha)) {
      add_to(out, w, c, k);
      continue;
    }
    const auto red = p_.reduce_with_quotients(Polynomial{{w.alpha, Scalar(1)}});
    for (const auto& [a, b] : red.normal_form) work.push_back({CrystalWord{a, w.q, w.forms}, c * b});
    for (std::size_t r = 0; r < red.quotients.size(); ++r) {
      if (red.quotients[r].empty()) continue;
      // f_r gamma^Q = (q_r + 1) gamma^{Q + e_r}
      auto q = w.q;
      const Scalar factor = c * Scalar(q[r] + 1);
      ++q[r];
      for (const auto& [a, b] : red.quotients[r]) work.push_back({CrystalWord{a, q, w.forms}, factor * b});
    }
  }
  return out;
}

CrystalElement Envelope::multiply(const CrystalElement& a, const CrystalElement& b) const {
  CrystalElement out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Scalar c = ca * cb;
      CrystalWord w = wa;
      for (std::size_t i = 0; i < w.alpha.size(); ++i) w.alpha[i] += wb.alpha[i];
      for (std::size_t r = 0; r < w.q.size(); ++r) {
        c *= Scalar(binomial(wa.q[r] + wb.q[r], wa.q[r]));
        w.q[r] += wb.q[r];
      }
      // dx_A ^ dx_B: one sign per pair (i in A, j in B) with i > j
      bool vanish = false;
      for (auto i : wa.forms) {
        for (auto j : wb.forms) {
          if (i == j) vanish = true;
          if (i > j) c = -c;
        }
      }
      w.forms = wa.forms;
      w.forms.insert(w.forms.end(), wb.forms.begin(), wb.forms.end());
      std::sort(w.forms.begin(), w.forms.end());
      if (!vanish) add_to(out, w, c, ring());
    }
  }
  return normalize(out);
}

std::vector<CrystalWord> Envelope::words(std::uint32_t weight, std::uint32_t form_degree) const {
  std::vector<CrystalWord> out;
  const std::size_t r = num_relations();
  const std::size_t n = num_variables();
  if (form_degree > n) return out;
  std::vector<std::vector<std::uint32_t>> qs;
  std::vector<std::uint32_t> q(r, 0);
  std::function<void(std::size_t, std::uint32_t)> comp = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 >= r) {
      if (r == 0) {
        if (left == 0) qs.push_back(q);
        return;
      }
      q[i] = left;
      qs.push_back(q);
      q[i] = 0;
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      q[i] = v;
      comp(i + 1, left - v);
    }
    q[i] = 0;
  };
  comp(0, weight);
  std::vector<std::vector<std::uint32_t>> subsets;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> choose = [&](std::uint32_t start) {
    if (cur.size() == form_degree) {
      subsets.push_back(cur);
      return;
    }
    for (std::uint32_t i = start; i < n; ++i) {
      cur.push_back(i);
      choose(i + 1);
      cur.pop_back();
    }
  };
  choose(0);
  for (const auto& qq : qs) {
    for (const auto& j : subsets) {
      for (const auto& a : normal_) out.push_back(CrystalWord{a, qq, j});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Envelope::format(const CrystalWord& w) const {
  std::vector<std::string> parts;
  const auto& vars = p_.variables();
  bool any_alpha = false;
  for (auto a : w.alpha) any_alpha |= a != 0;
  if (any_alpha) parts.push_back(format_polynomial(Polynomial{{w.alpha, Scalar(1)}}, vars));
  for (std::size_t r = 0; r < w.q.size(); ++r) {
    if (w.q[r] == 0) continue;
    parts.push_back("g" + std::to_string(w.q[r]) + "(" + format_polynomial(p_.relations()[r], vars) + ")");
  }
  for (auto i : w.forms) parts.push_back("d" + vars[i]);
  if (parts.empty()) return "1";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

std::string Envelope::format(const CrystalElement& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c.get_str() << "*";
    os << format(w);
  }
  return os.str();
}

std::vector<CrystalWord> envelope_slice(const Envelope& e, std::uint32_t weight, std::uint32_t poly_bound) {
  std::vector<CrystalWord> out;
  for (std::uint32_t w = 0; w <= weight; ++w) {
    for (auto& word : e.words(w, 0)) {
      std::uint32_t deg = 0;
      for (auto a : word.alpha) deg += a;
      if (deg <= poly_bound) out.push_back(std::move(word));
    }
  }
  return out;
}

CrystalElement dbar(const Envelope& e, const CrystalElement& x) {
  const auto& k = e.ring();
  const auto& rels = e.presentation().relations();
  CrystalElement out;
  for (const auto& [w, c] : x) {
    for (std::uint32_t i = 0; i < w.alpha.size(); ++i) {
      if (w.alpha[i] == 0) continue;
      auto merged = wedge_one(i, w.forms);
      if (!merged) continue;
      CrystalWord t{w.alpha, w.q, merged->second};
      --t.alpha[i];
      add_to(out, t, c * Scalar(w.alpha[i]) * merged->first, k);
    }
    for (std::size_t r = 0; r < w.q.size(); ++r) {
      if (w.q[r] == 0 || e.constants()[r]) continue;
      // gamma_{q-1}(f) df
      for (const auto& [beta, b] : rels[r]) {
        for (std::uint32_t i = 0; i < beta.size(); ++i) {
          if (beta[i] == 0) continue;
          auto merged = wedge_one(i, w.forms);
          if (!merged) continue;
          CrystalWord t{w.alpha, w.q, merged->second};
          --t.q[r];
          for (std::size_t v = 0; v < beta.size(); ++v) t.alpha[v] += beta[v];
          --t.alpha[i];
          add_to(out, t, c * b * Scalar(beta[i]) * merged->first, k);
        }
      }
    }
  }
  return e.normalize(out);
}

HomologyGroup PresentedComplex::homology(int position) const {
  if (position < 0 || position >= static_cast<int>(length())) return HomologyGroup{};
  const std::size_t i = position;
  const std::size_t n = basis[i].size();
  PresentedSpot s;
  s.d_in = i + 1 < length() ? d[i + 1] : SparseMatrix(n, 0);
  s.d_out = i >= 1 ? d[i] : SparseMatrix(0, n);
  s.rel_mid = relations[i];
  s.rel_out = i >= 1 ? relations[i - 1] : SparseMatrix(0, 0);
  return presented_homology(s, ring);
}

bool PresentedComplex::composes_to_zero() const {
  for (std::size_t i = 2; i < length(); ++i) {
    const SparseMatrix c = (d[i - 1] * d[i]).reduced(ring);
    if (c.is_zero()) continue;
    const auto& rel = relations[i - 2];
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (c.column(j).empty()) continue;
      std::vector<Scalar> b(c.rows(), Scalar(0));
      for (const auto& [r, v] : c.column(j)) b[r] = v;
      if (rel.cols() == 0 || !preimage(rel, b, ring)) return false;
    }
  }
  return true;
}

namespace {

// Position i spans the words with |J| = p - i and |Q| in [lo(i), hi(i)].
PresentedComplex build_complex(const Envelope& e, int p, bool prime) {
  const auto& k = e.ring();
  PresentedComplex c;
  c.ring = k;
  std::vector<std::map<CrystalWord, std::size_t>> index(p + 1);
  for (int i = 0; i <= p; ++i) {
    std::vector<CrystalWord> b;
    const std::uint32_t lo = prime ? 0 : i;
    for (std::uint32_t w = lo; w <= static_cast<std::uint32_t>(i); ++w) {
      for (auto& word : e.words(w, p - i)) b.push_back(std::move(word));
    }
    for (std::size_t j = 0; j < b.size(); ++j) index[i][b[j]] = j;
    c.basis.push_back(std::move(b));
  }
  for (int i = 0; i <= p; ++i) {
    const auto& b = c.basis[i];
    // c_k w = (q_k + 1) w^{+e_k}, the right side vanishing beyond weight i
    std::vector<SparseMatrix::Column> cols;
    for (std::size_t r = 0; r < e.num_relations(); ++r) {
      if (!e.constants()[r]) continue;
      const Scalar cr = k.normalize(*e.constants()[r]);
      for (std::size_t j = 0; j < b.size(); ++j) {
        SparseMatrix::Column col;
        if (cr != 0) col[j] = cr;
        CrystalWord up = b[j];
        ++up.q[r];
        auto it = index[i].find(up);
        if (prime && it != index[i].end()) {
          const Scalar v = k.normalize(-Scalar(b[j].q[r] + 1));
          if (v != 0) col[it->second] = v;
        }
        if (!col.empty()) cols.push_back(std::move(col));
      }
    }
    SparseMatrix rel(b.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) rel.set_column(j, std::move(cols[j]));
    c.relations.push_back(std::move(rel));
  }
  c.d.push_back(SparseMatrix(0, c.basis[0].size()));
  for (int i = 1; i <= p; ++i) {
    const auto& src = c.basis[i];
    SparseMatrix m(c.basis[i - 1].size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      for (const auto& [w, v] : dbar(e, CrystalElement{{src[j], Scalar(1)}})) {
        // terms in F_i vanish in the target
        if (w.weight() >= static_cast<std::uint32_t>(i)) continue;
        auto it = index[i - 1].find(w);
        if (it == index[i - 1].end()) {
          throw TruncationOverflow("d of " + e.format(src[j]) + " contains " + e.format(w) +
                                   " outside position " + std::to_string(i - 1));
        }
        m.set(it->second, j, v);
      }
    }
    c.d.push_back(std::move(m));
  }
  return c;
}

FilteredGroups layer_sums(const Envelope& e, int n_max, bool prime) {
  if (n_max < 0) throw DimensionMismatch("n_max must be non-negative");
  FilteredGroups out;
  std::vector<PresentedComplex> complexes;
  for (int p = 0; p <= n_max; ++p) complexes.push_back(build_complex(e, p, prime));
  for (int n = 0; n <= n_max; ++n) {
    std::map<int, HomologyGroup> layers;
    std::vector<HomologyGroup> parts;
    for (int p = 0; p <= n; ++p) {
      if (n - p > p) continue;
      auto h = complexes[p].homology(n - p);
      parts.push_back(h);
      layers[p] = std::move(h);
    }
    out.total.push_back(direct_sum(parts, e.ring()));
    out.layers.push_back(std::move(layers));
  }
  return out;
}

}  // namespace

PresentedComplex L_complex(const Envelope& e, int p) { return build_complex(e, p, false); }
PresentedComplex Lprime_complex(const Envelope& e, int p) { return build_complex(e, p, true); }

FilteredGroups hodge_hh(const Envelope& e, int n_max) { return layer_sums(e, n_max, false); }

FilteredGroups hc_layers_small(const Envelope& e, int n_max) {
  if (e.num_variables() > 2) {
    throw TooManyVariables(std::to_string(e.num_variables()) + " variables; the layer formula needs at most 2");
  }
  return layer_sums(e, n_max, true);
}

}  // namespace gammahc
