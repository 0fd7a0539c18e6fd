#include "gammahc/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "gammahc/error.hpp"
#include "gammahc/linalg.hpp"

namespace gammahc {

namespace {

void add_poly_term(Polynomial& f, const Exponents& e, const Scalar& c, const GroundRing* ring) {
  if (c == 0) return;
  Scalar& slot = f[e];
  slot += c;
  if (ring) slot = ring->normalize(slot);
  if (slot == 0) f.erase(e);
}

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial out;
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [e, c] = term();
      add_poly_term(out, e, c * sign, nullptr);
      first = false;
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  Integer number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(s_.substr(start, pos_ - start));
  }
  std::pair<Exponents, Scalar> term() {
    Exponents e(vars_.size(), 0);
    Scalar c = 1;
    bool have_factor = false;
    while (true) {
      skip();
      if (pos_ == s_.size()) fail("expected a factor");
      const char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= Scalar(number());
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
          pos_ = start;
          fail("unknown variable '" + name + "'");
        }
        std::uint32_t power = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          power = static_cast<std::uint32_t>(number().get_ui());
        }
        e[static_cast<std::size_t>(it - vars_.begin())] += power;
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      have_factor = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      // implicit product after a coefficient: "2x"
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) continue;
      break;
    }
    if (!have_factor) fail("empty term");
    return {e, c};
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

int exp_degree(const Exponents& e) {
  int d = 0;
  for (auto v : e) d += static_cast<int>(v);
  return d;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
  return PolyParser(text, variables).parse();
}

std::string format_polynomial(const Polynomial& f, const std::vector<std::string>& variables) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest degree first
  std::vector<std::pair<Exponents, Scalar>> terms(f.begin(), f.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (exp_degree(a.first) != exp_degree(b.first)) return exp_degree(a.first) > exp_degree(b.first);
    return a.first > b.first;
  });
  for (const auto& [e, c] : terms) {
    Scalar a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool any = false;
    if (a != 1 || exp_degree(e) == 0) {
      os << a.get_str();
      any = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) os << "*";
      any = true;
      os << variables[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

int total_degree(const Polynomial& f) {
  int d = -1;
  for (const auto& [e, c] : f) d = std::max(d, exp_degree(e));
  return d;
}

Presentation::Presentation(GroundRing ring, std::vector<std::string> variables, std::vector<Polynomial> relations)
    : ring_(std::move(ring)), vars_(std::move(variables)), rels_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (!seen.insert(v).second) throw ParseError("duplicate variable '" + v + "'");
  }
  for (auto& f : rels_) {
    Polynomial g;
    for (const auto& [e, c] : f) {
      if (e.size() != vars_.size()) throw DimensionMismatch("relation has the wrong number of variables");
      add_poly_term(g, e, c, &ring_);
    }
    f = std::move(g);
  }

  // candidate leading powers per non-constant relation
  std::vector<std::size_t> nonconst;
  std::vector<std::vector<LeadingPower>> cands;
  for (std::size_t k = 0; k < rels_.size(); ++k) {
    const int deg = total_degree(rels_[k]);
    if (deg <= 0) continue;
    nonconst.push_back(k);
    std::vector<LeadingPower> c;
    for (const auto& [e, coef] : rels_[k]) {
      if (exp_degree(e) != deg || !ring_.is_unit(coef)) continue;
      std::size_t nz = 0, var = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) {
          ++nz;
          var = i;
        }
      }
      if (nz != 1) continue;
      // every other term must have smaller total degree
      bool ok = true;
      for (const auto& [e2, c2] : rels_[k]) {
        if (e2 != e && exp_degree(e2) >= deg) ok = false;
      }
      if (ok) c.push_back({k, var, static_cast<std::uint32_t>(deg)});
    }
    cands.push_back(std::move(c));
  }
  if (nonconst.size() != vars_.size()) return;
  std::vector<LeadingPower> chosen;
  std::vector<bool> used(vars_.size(), false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == cands.size()) return true;
    for (const auto& lp : cands[i]) {
      if (used[lp.variable]) continue;
      used[lp.variable] = true;
      chosen.push_back(lp);
      if (match(i + 1)) return true;
      chosen.pop_back();
      used[lp.variable] = false;
    }
    return false;
  };
  if (!match(0)) return;
  // make the leading coefficients 1
  for (const auto& lp : chosen) {
    Exponents e(vars_.size(), 0);
    e[lp.variable] = lp.power;
    const Scalar inv = *ring_.inverse(rels_[lp.relation].at(e));
    Polynomial g;
    for (const auto& [ex, c] : rels_[lp.relation]) add_poly_term(g, ex, c * inv, &ring_);
    rels_[lp.relation] = std::move(g);
  }
  qm_ = std::move(chosen);
}

Presentation Presentation::parse(const GroundRing& ring, const std::vector<std::string>& variables,
                                 const std::vector<std::string>& relations) {
  std::vector<Polynomial> rels;
  for (const auto& r : relations) rels.push_back(parse_polynomial(r, variables));
  return Presentation(ring, variables, std::move(rels));
}

std::vector<std::size_t> Presentation::constant_relations() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rels_.size(); ++k) {
    if (total_degree(rels_[k]) <= 0) out.push_back(k);
  }
  return out;
}

const std::vector<LeadingPower>& Presentation::require_quasi_monic() const {
  if (!qm_) {
    throw NotQuasiMonic("presentation " + to_string() +
                        " has no unit leading powers x_i^m_i covering every variable");
  }
  return *qm_;
}

Reduction Presentation::reduce_with_quotients(const Polynomial& f) const {
  const auto& lead = require_quasi_monic();
  Reduction out;
  out.quotients.assign(rels_.size(), Polynomial{});
  Polynomial work;
  for (const auto& [e, c] : f) add_poly_term(work, e, c, &ring_);
  while (true) {
    // highest-degree reducible term first
    const Exponents* target = nullptr;
    const LeadingPower* by = nullptr;
    int best = -1;
    for (const auto& [e, c] : work) {
      for (const auto& lp : lead) {
        if (e[lp.variable] >= lp.power && exp_degree(e) > best) {
          target = &e;
          by = &lp;
          best = exp_degree(e);
        }
      }
    }
    if (!target) break;
    Exponents shift = *target;
    shift[by->variable] -= by->power;
    const Scalar c = work.at(*target);
    add_poly_term(out.quotients[by->relation], shift, c, &ring_);
    for (const auto& [e, rc] : rels_[by->relation]) {
      Exponents m = e;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += shift[i];
      add_poly_term(work, m, -c * rc, &ring_);
    }
  }
  out.normal_form = std::move(work);
  return out;
}

std::vector<Exponents> Presentation::normal_monomials() const {
  const auto& lead = require_quasi_monic();
  std::vector<std::uint32_t> bound(vars_.size(), 0);
  for (const auto& lp : lead) bound[lp.variable] = lp.power;
  std::vector<Exponents> out;
  Exponents cur(vars_.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars_.size()) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t a = 0; a < bound[i]; ++a) {
      cur[i] = a;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  return out;
}

Polynomial Presentation::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      add_poly_term(out, e, ca * cb, &ring_);
    }
  }
  return out;
}

std::string Presentation::to_string() const {
  std::ostringstream os;
  os << ring_.to_string() << "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i];
  os << "]/(";
  for (std::size_t k = 0; k < rels_.size(); ++k) os << (k ? ", " : "") << format_polynomial(rels_[k], vars_);
  os << ")";
  return os.str();
}

std::size_t FreeDGA::max_generator_degree() const {
  std::size_t m = 0;
  for (const auto& g : algebra.generators()) m = std::max(m, static_cast<std::size_t>(g.hdeg));
  return m;
}

bool FreeDGA::has_degree_zero_generators() const {
  return std::any_of(algebra.generators().begin(), algebra.generators().end(),
                     [](const Generator& g) { return g.hdeg == 0; });
}

FreeDGA koszul_model(const Presentation& p) {
  std::vector<Generator> gens;
  std::set<std::string> names(p.variables().begin(), p.variables().end());
  for (const auto& v : p.variables()) gens.push_back({v, 0, GeneratorKind::Polynomial, 0, 1});
  for (std::size_t k = 0; k < p.relations().size(); ++k) {
    std::string name = "y" + std::to_string(k + 1);
    while (names.count(name)) name = "_" + name;
    names.insert(name);
    gens.push_back({name, 1, GeneratorKind::Exterior, 0, std::max(0, total_degree(p.relations()[k]))});
  }
  FreeDGA m{GradedAlgebra(p.ring(), gens), {}};
  m.boundary.degree = -1;
  m.boundary.values.assign(gens.size(), Element{});
  const std::size_t n = p.variables().size();
  for (std::size_t k = 0; k < p.relations().size(); ++k) {
    Element e;
    for (const auto& [ex, c] : p.relations()[k]) {
      Monomial mono = m.algebra.one();
      for (std::size_t i = 0; i < n; ++i) mono[i] = ex[i];
      add_term(e, mono, c, p.ring());
    }
    m.boundary.values[n + k] = std::move(e);
  }
  return m;
}

FreeDGA make_free_dga(const GroundRing& ring, std::vector<Generator> generators,
                      const std::map<std::string, std::string>& boundaries) {
  FreeDGA m{GradedAlgebra(ring, generators), {}};
  m.boundary.degree = -1;
  m.boundary.values.assign(generators.size(), Element{});
  std::vector<std::string> names;
  for (const auto& g : generators) names.push_back(g.name);
  for (const auto& [name, text] : boundaries) {
    auto idx = m.algebra.index_of(name);
    if (!idx) throw UndefinedGenerator("boundary given for unknown generator " + name);
    Element e;
    for (const auto& [ex, c] : parse_polynomial(text, names)) {
      // monomials are read in generator-table order
      Monomial mono(ex.begin(), ex.end());
      Scalar coef = c;
      bool zero = false;
      for (std::size_t i = 0; i < mono.size(); ++i) {
        const auto kind = generators[i].kind;
        if (kind == GeneratorKind::Exterior && mono[i] > 1) zero = true;
        if (kind == GeneratorKind::DividedPower) {
          // x^q = q! gamma^q(x)
          for (std::uint32_t t = 2; t <= mono[i]; ++t) coef *= t;
        }
      }
      if (zero) continue;
      if (m.algebra.hdeg(mono) != generators[*idx].hdeg - 1) {
        throw InvalidGenerator("boundary of " + name + " is not of degree " +
                               std::to_string(generators[*idx].hdeg - 1));
      }
      add_term(e, mono, coef, ring);
    }
    m.boundary.values[*idx] = std::move(e);
  }
  return m;
}

bool check_boundary_square(const FreeDGA& m) {
  for (const auto& v : m.boundary.values) {
    if (v && !derive(m.algebra, m.boundary, *v).empty()) return false;
  }
  return true;
}

namespace {

constexpr int kUnbounded = 1 << 20;

SparseMatrix boundary_matrix(const FreeDGA& m, int degree) {
  const auto src = basis_slice(m.algebra, degree, 0, kUnbounded);
  const auto dst = basis_slice(m.algebra, degree - 1, 0, kUnbounded);
  return derivation_matrix(m.algebra, m.boundary, src, dst);
}

void require_positive_degrees(const FreeDGA& m) {
  if (m.has_degree_zero_generators()) {
    throw UnsupportedV0("model has generators of degree 0; degree slices are not of finite rank");
  }
  for (const auto& g : m.algebra.generators()) {
    if (g.weight != 0) throw InvalidGenerator("chain algebra generator " + g.name + " carries Gamma-weight");
  }
}

}  // namespace

HomologyGroup model_homology(const FreeDGA& m, int degree) {
  require_positive_degrees(m);
  return homology_at(boundary_matrix(m, degree + 1), boundary_matrix(m, degree), m.algebra.ring());
}

TateTower tate_extend(TateTower tower, int target_degree) {
  require_positive_degrees(tower.model);
  for (int deg = 1; deg < target_degree; ++deg) {
    const FreeDGA& cur = tower.model;
    const auto basis = homology_generators(boundary_matrix(cur, deg + 1), boundary_matrix(cur, deg),
                                           cur.algebra.ring());
    if (basis.representatives.empty()) continue;
    const auto slice = basis_slice(cur.algebra, deg, 0, kUnbounded);
    std::vector<Generator> gens = cur.algebra.generators();
    std::vector<Element> reps;
    TateStage stage;
    stage.degree = deg;
    int suffix = 0;
    for (const auto& rep : basis.representatives) {
      std::string name;
      do {
        name = "t" + std::to_string(deg + 1) + "_" + std::to_string(suffix++);
      } while (cur.algebra.index_of(name));
      const int h = deg + 1;
      gens.push_back({name, h, h % 2 ? GeneratorKind::Exterior : GeneratorKind::Polynomial, 0, 0});
      Element e;
      for (std::size_t i = 0; i < rep.size(); ++i) {
        if (rep[i] != 0) add_term(e, slice[i], rep[i], cur.algebra.ring());
      }
      reps.push_back(e);
      stage.adjoined.push_back(name);
    }
    FreeDGA next{GradedAlgebra(cur.algebra.ring(), gens), {}};
    next.boundary.degree = -1;
    auto pad = [&](const Element& e) {
      Element out;
      for (const auto& [mono, c] : e) {
        Monomial mm = mono;
        mm.resize(gens.size(), 0);
        out.emplace(std::move(mm), c);
      }
      return out;
    };
    for (const auto& v : cur.boundary.values) next.boundary.values.push_back(v ? pad(*v) : Element{});
    for (const auto& r : reps) next.boundary.values.push_back(pad(r));
    for (const auto& r : reps) stage.representatives.push_back(pad(r));
    tower.model = std::move(next);
    tower.stages.push_back(std::move(stage));
  }
  return tower;
}

}  // namespace gammahc
