#include "gammahc/dp_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gammahc/error.hpp"

namespace gammahc {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Polynomial:
      return "Polynomial";
    case GeneratorKind::Exterior:
      return "Exterior";
    case GeneratorKind::DividedPower:
      return "DividedPower";
  }
  return "?";
}

GradedAlgebra::GradedAlgebra(GroundRing ring, std::vector<Generator> generators)
    : ring_(std::move(ring)), gens_(std::move(generators)) {
  std::set<std::string> names;
  for (const auto& g : gens_) {
    if (g.name.empty() || !names.insert(g.name).second) {
      throw InvalidGenerator("duplicate or empty generator name '" + g.name + "'");
    }
    if (g.hdeg < 0) throw InvalidGenerator(g.name + " has negative degree");
    const bool odd = g.hdeg % 2 != 0;
    if ((g.kind == GeneratorKind::Exterior) != odd) {
      throw InvalidGenerator(g.name + ": " + to_string(g.kind) + " generator of degree " +
                             std::to_string(g.hdeg));
    }
    if (g.weight < 0 || g.filtration < 0) throw InvalidGenerator(g.name + " has a negative weight");
  }
}

std::optional<std::size_t> GradedAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

Monomial GradedAlgebra::unit_monomial(std::size_t gen, std::uint32_t exponent) const {
  Monomial m = one();
  m.at(gen) = exponent;
  return m;
}

Element GradedAlgebra::element(const Monomial& m, const Scalar& c) const {
  Element e;
  add_term(e, m, c, ring_);
  return e;
}

int GradedAlgebra::hdeg(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * gens_[i].hdeg;
  return d;
}

int GradedAlgebra::weight(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * gens_[i].weight;
  return d;
}

int GradedAlgebra::filtration(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * gens_[i].filtration;
  return d;
}

std::string GradedAlgebra::format(const Monomial& m) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (any) os << "*";
    any = true;
    const auto& g = gens_[i];
    if (g.kind == GeneratorKind::DividedPower) {
      os << "g" << m[i] << "(" << g.name << ")";
    } else {
      os << g.name;
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  if (!any) os << "1";
  return os.str();
}

std::string GradedAlgebra::format(const Element& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e) {
    if (!first) os << " + ";
    first = false;
    if (c == -1) {
      os << "-";
    } else if (c != 1) {
      os << c.get_str() << "*";
    }
    os << format(m);
  }
  return os.str();
}

void add_term(Element& a, const Monomial& m, const Scalar& c, const GroundRing& ring) {
  if (c == 0) return;
  auto it = a.find(m);
  if (it == a.end()) {
    const Scalar v = ring.normalize(c);
    if (v != 0) a.emplace(m, v);
    return;
  }
  it->second = ring.normalize(it->second + c);
  if (it->second == 0) a.erase(it);
}

Element add(const Element& a, const Element& b, const GroundRing& ring) {
  Element out = a;
  for (const auto& [m, c] : b) add_term(out, m, c, ring);
  return out;
}

Element scale(const Element& a, const Scalar& c, const GroundRing& ring) {
  Element out;
  for (const auto& [m, v] : a) add_term(out, m, v * c, ring);
  return out;
}

std::optional<std::pair<Scalar, Monomial>> mul_monomials(const GradedAlgebra& alg, const Monomial& a,
                                                         const Monomial& b) {
  Monomial out(a.size(), 0);
  Integer coef = 1;
  // number of (i in a, j in b) exterior pairs with i > j
  std::size_t swaps = 0;
  std::size_t ext_in_b_before = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto kind = alg.generator(i).kind;
    if (kind == GeneratorKind::Exterior) {
      if (a[i] && b[i]) return std::nullopt;
      if (a[i]) swaps += ext_in_b_before;
      if (b[i]) ++ext_in_b_before;
    } else if (kind == GeneratorKind::DividedPower && a[i] && b[i]) {
      coef *= binomial(a[i] + b[i], a[i]);
    }
    out[i] = a[i] + b[i];
  }
  Scalar c(coef);
  if (swaps % 2) c = -c;
  return std::make_pair(c, std::move(out));
}

Element mul(const GradedAlgebra& alg, const Element& a, const Element& b) {
  Element out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      auto p = mul_monomials(alg, ma, mb);
      if (p) add_term(out, p->second, p->first * ca * cb, alg.ring());
    }
  }
  return out;
}

namespace {

void enumerate(const GradedAlgebra& alg, std::size_t i, int hdeg, int weight, int filt, Monomial& cur,
               std::vector<Monomial>& out) {
  if (i == alg.size()) {
    if (hdeg == 0 && weight == 0) out.push_back(cur);
    return;
  }
  const auto& g = alg.generator(i);
  std::uint32_t max_e;
  if (g.kind == GeneratorKind::Exterior) {
    max_e = 1;
  } else {
    long bound = -1;
    auto tighten = [&](int budget, int per) {
      if (per <= 0) return;
      const long b = budget / per;
      bound = bound < 0 ? b : std::min(bound, b);
    };
    tighten(hdeg, g.hdeg);
    tighten(weight, g.weight);
    tighten(filt, g.filtration);
    if (bound < 0) {
      throw InfiniteSlice("generator " + g.name + " has degree, weight and filtration zero");
    }
    max_e = static_cast<std::uint32_t>(bound);
  }
  for (std::uint32_t e = 0; e <= max_e; ++e) {
    const int h = hdeg - static_cast<int>(e) * g.hdeg;
    const int w = weight - static_cast<int>(e) * g.weight;
    const int f = filt - static_cast<int>(e) * g.filtration;
    if (h < 0 || w < 0 || f < 0) break;
    cur[i] = e;
    enumerate(alg, i + 1, h, w, f, cur, out);
  }
  cur[i] = 0;
}

std::uint32_t total(const Monomial& m) {
  std::uint32_t t = 0;
  for (auto e : m) t += e;
  return t;
}

}  // namespace

std::vector<Monomial> basis_slice(const GradedAlgebra& alg, int hdeg, int weight, int filtration_bound) {
  std::vector<Monomial> out;
  if (hdeg < 0 || weight < 0 || filtration_bound < 0) return out;
  Monomial cur = alg.one();
  enumerate(alg, 0, hdeg, weight, filtration_bound, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    const auto ta = total(a);
    const auto tb = total(b);
    if (ta != tb) return ta < tb;
    return a > b;
  });
  return out;
}

Element derive_monomial(const GradedAlgebra& alg, const GammaDerivation& deriv, const Monomial& m) {
  Element out;
  const bool odd = deriv.degree % 2 != 0;
  int prefix_deg = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    const auto& g = alg.generator(i);
    if (i >= deriv.values.size() || !deriv.values[i]) {
      throw UndefinedGenerator("derivation has no value on generator " + g.name);
    }
    const Element& value = *deriv.values[i];
    if (!value.empty()) {
      // D(g^e) = c * g^(e-1) * D(g)
      Scalar c = 1;
      if (g.kind == GeneratorKind::Polynomial) c = m[i];
      // prefix * g^(e-1) * D(g) * suffix
      Monomial prefix = alg.one();
      Monomial suffix = alg.one();
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j < i) prefix[j] = m[j];
        if (j > i) suffix[j] = m[j];
      }
      Monomial power = alg.one();
      power[i] = m[i] - 1;
      Element left = mul(alg, alg.element(prefix), alg.element(power, c));
      Element term = mul(alg, mul(alg, left, value), alg.element(suffix));
      if (odd && prefix_deg % 2 != 0) term = scale(term, -1, alg.ring());
      out = add(out, term, alg.ring());
    }
    prefix_deg += static_cast<int>(m[i]) * g.hdeg;
  }
  return out;
}

Element derive(const GradedAlgebra& alg, const GammaDerivation& deriv, const Element& e) {
  Element out;
  for (const auto& [m, c] : e) {
    for (const auto& [mm, cc] : derive_monomial(alg, deriv, m)) add_term(out, mm, cc * c, alg.ring());
  }
  return out;
}

SparseMatrix derivation_matrix(const GradedAlgebra& alg, const GammaDerivation& deriv,
                               const std::vector<Monomial>& source, const std::vector<Monomial>& target) {
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index.emplace(target[i], i);
  SparseMatrix out(target.size(), source.size());
  for (std::size_t j = 0; j < source.size(); ++j) {
    SparseMatrix::Column col;
    for (const auto& [m, c] : derive_monomial(alg, deriv, source[j])) {
      auto it = index.find(m);
      if (it == index.end()) {
        throw TruncationOverflow("image of " + alg.format(source[j]) + " contains " + alg.format(m) +
                                 " outside the target slice (internal weight " +
                                 std::to_string(alg.filtration(m)) + ")");
      }
      col[it->second] = c;
    }
    out.set_column(j, std::move(col));
  }
  return out;
}

std::uint32_t ContractibleAlgebra::w_degree(const Monomial& m) const {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < num_w; ++i) d += m[w_index(i)];
  return d;
}

bool ContractibleAlgebra::in_augmentation_ideal(const Monomial& m) const {
  for (std::size_t i = num_v; i < m.size(); ++i) {
    if (m[i] != 0) return true;
  }
  return false;
}

ContractibleAlgebra make_contractible(GroundRing ring, const std::vector<std::pair<std::string, int>>& v,
                                      const std::vector<std::pair<std::string, int>>& w) {
  auto kind_for = [](int hdeg) { return hdeg % 2 ? GeneratorKind::Exterior : GeneratorKind::Polynomial; };
  std::vector<Generator> gens;
  for (const auto& [name, deg] : v) gens.push_back({name, deg, kind_for(deg), 0, 1});
  for (const auto& [name, deg] : w) {
    gens.push_back({name, deg, kind_for(deg), 0, 1});
    gens.push_back({"d" + name, deg + 1,
                    (deg + 1) % 2 ? GeneratorKind::Exterior : GeneratorKind::DividedPower, 1, 1});
  }
  ContractibleAlgebra k;
  k.algebra = GradedAlgebra(std::move(ring), std::move(gens));
  k.num_v = v.size();
  k.num_w = w.size();
  k.D.degree = -1;
  k.D.values.assign(k.algebra.size(), Element{});
  for (std::size_t i = 0; i < k.num_w; ++i) {
    k.D.values[k.dw_index(i)] = k.algebra.generator_element(k.w_index(i));
  }
  return k;
}

Element homotopy_h(const ContractibleAlgebra& k, const Element& e) {
  const auto& alg = k.algebra;
  Element out;
  for (const auto& [m, c] : e) {
    if (!k.in_augmentation_ideal(m)) {
      throw NotInIdeal("term " + alg.format(m) + " has no W or dW factor");
    }
    std::size_t block = k.num_w;
    while (block-- > 0) {
      if (m[k.w_index(block)] || m[k.dw_index(block)]) break;
    }
    const std::size_t wi = k.w_index(block);
    const std::size_t di = k.dw_index(block);
    int before = 0;
    for (std::size_t j = 0; j < wi; ++j) before += static_cast<int>(m[j]) * alg.generator(j).hdeg;
    Monomial r = m;
    if (alg.generator(wi).hdeg % 2 == 0) {
      // w^(a+1) -> w^a dw, w^a dw -> 0
      if (m[di] != 0) continue;
      r[wi] -= 1;
      r[di] = 1;
    } else {
      // w g_b(dw) -> g_(b+1)(dw), g_b(dw) -> 0
      if (m[wi] == 0) continue;
      r[wi] = 0;
      r[di] += 1;
    }
    add_term(out, r, before % 2 ? Scalar(-c) : c, alg.ring());
  }
  return out;
}

}  // namespace gammahc
