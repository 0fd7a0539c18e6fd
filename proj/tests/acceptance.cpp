// Acceptance run: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "gammahc/bar_oracle.hpp"
#include "gammahc/crystalline.hpp"
#include "gammahc/error.hpp"
#include "gammahc/gamma_forms.hpp"
#include "gammahc/linalg.hpp"
#include "oracles.hpp"
#include "random_algebra.hpp"

using namespace gammahc;

namespace {

const GroundRing ZZ = GroundRing::integers();

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Presentation pres(const GroundRing& k, std::vector<std::string> vars, std::vector<std::string> rels) {
  return Presentation::parse(k, vars, rels);
}

HomologyGroup cyclic(long d) {
  HomologyGroup g;
  g.invariant_factors.push_back(Integer(d));
  return g;
}

Integer torsion_order(const HomologyGroup& g) {
  Integer o = 1;
  for (const auto& d : g.invariant_factors) o *= d;
  return o;
}

std::string show(const HomologyGroup& g, const GroundRing& k) { return g.to_string(k); }

int sign(int a, int b) { return (a * b) % 2 ? -1 : 1; }

Outcome algebra_laws(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  int cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ring = trial % 4 == 3 ? GroundRing::integers_mod(6) : ZZ;
    const auto alg = fixtures::random_table(rng, ring);
    const int da = static_cast<int>(rng() % 5), db = static_cast<int>(rng() % 5);
    const auto a = fixtures::random_homogeneous(rng, alg, da);
    const auto b = fixtures::random_homogeneous(rng, alg, db);
    o.expect(mul(alg, a, b) == scale(mul(alg, b, a), sign(da, db), ring), "graded commutativity");
    for (std::size_t i = 0; i < alg.size(); ++i) {
      const auto& g = alg.generator(i);
      if (g.kind == GeneratorKind::Exterior) {
        const auto e = alg.generator_element(i);
        o.expect(mul(alg, e, e).empty(), "exterior square of " + g.name);
      } else if (g.kind == GeneratorKind::DividedPower) {
        const std::uint32_t p = rng() % 9, q = rng() % (9 - p);
        const auto lhs = mul(alg, alg.element(alg.unit_monomial(i, p)), alg.element(alg.unit_monomial(i, q)));
        o.expect(lhs == alg.element(alg.unit_monomial(i, p + q), Scalar(binomial(p + q, p))),
                 "gamma^" + std::to_string(p) + " gamma^" + std::to_string(q));
      }
    }
    const int degree = rng() % 2 ? 1 : -1;
    const auto d = fixtures::random_derivation(rng, alg, degree);
    const auto lhs = derive(alg, d, mul(alg, a, b));
    const auto rhs = add(mul(alg, derive(alg, d, a), b),
                         scale(mul(alg, a, derive(alg, d, b)), degree % 2 && da % 2 ? -1 : 1, ring), ring);
    o.expect(lhs == rhs, "Leibniz rule");
    ++cases;
  }
  o.expect(cases == 1000, "case count");
  if (o.ok) o.detail = std::to_string(cases) + " cases";
  return o;
}

Outcome mixed_identities() {
  Outcome o;
  std::vector<FreeDGA> models{koszul_model(pres(ZZ, {"x"}, {"x^2"})), koszul_model(pres(ZZ, {"x"}, {"x^3"})),
                              koszul_model(pres(ZZ, {"x", "y"}, {"x^2", "y^2"})),
                              koszul_model(pres(GroundRing::integers_mod(4), {"x"}, {"x^2 - 2"})),
                              koszul_model(pres(ZZ, {}, {"5"}))};
  std::vector<int> bounds{auto_filtration_bound(pres(ZZ, {"x"}, {"x^2"}), 3),
                          auto_filtration_bound(pres(ZZ, {"x"}, {"x^3"}), 3),
                          auto_filtration_bound(pres(ZZ, {"x", "y"}, {"x^2", "y^2"}), 3),
                          auto_filtration_bound(pres(GroundRing::integers_mod(4), {"x"}, {"x^2 - 2"}), 3), 0};
  std::size_t checks = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    // n_max = 3 builds total degrees 0..4
    const auto g = build_gamma_forms(models[i], 3, bounds[i]);
    const auto r = validate(g.complex);
    checks += r.checks;
    o.expect(r.ok, "forms model " + std::to_string(i) + ": " + r.failure);
  }
  for (const auto& p : {pres(ZZ, {"x"}, {"x^2"}), pres(ZZ, {"x"}, {"x^3"}), pres(ZZ, {"x", "y"}, {"x^2", "y^2"}),
                        pres(GroundRing::rationals(), {"x"}, {"x^2"})}) {
    const auto r = validate(cyclic_mixed(FiniteAlgebra::from_presentation(p), 3));
    checks += r.checks;
    o.expect(r.ok, "bar complex of " + p.to_string() + ": " + r.failure);
  }
  if (o.ok) o.detail = std::to_string(checks) + " slice identities";
  return o;
}

Outcome homotopy_suite(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, int>> v, w;
    const std::size_t nv = rng() % 4, nw = 1 + rng() % 3;
    for (std::size_t i = 0; i < nv; ++i) v.push_back({"v" + std::to_string(i), static_cast<int>(rng() % 4)});
    for (std::size_t i = 0; i < nw; ++i) w.push_back({"w" + std::to_string(i), static_cast<int>(rng() % 4)});
    const auto k = make_contractible(ZZ, v, w);
    const auto& alg = k.algebra;
    Element e;
    for (int t = 0; t < 4; ++t) {
      Monomial m = alg.one();
      for (std::size_t i = 0; i < alg.size(); ++i) {
        m[i] = alg.generator(i).kind == GeneratorKind::Exterior ? rng() % 2 : rng() % 3;
      }
      if (!k.in_augmentation_ideal(m)) m[k.w_index(rng() % nw)] = 1;
      add_term(e, m, Scalar(static_cast<long>(rng() % 9) - 4), ZZ);
    }
    const auto he = homotopy_h(k, e);
    const auto de = derive(alg, k.D, e);
    const auto hde = de.empty() ? Element{} : homotopy_h(k, de);
    o.expect(add(derive(alg, k.D, he), hde, ZZ) == e, "hD + Dh = id");
    o.expect(he.empty() || homotopy_h(k, he).empty(), "h^2 = 0");
    for (const auto& [m, c] : e) {
      for (const auto& [mm, cc] : homotopy_h(k, alg.element(m))) {
        o.expect(k.w_degree(mm) + 1 == k.w_degree(m), "h lowers the I-adic degree by one");
      }
    }
  }
  if (o.ok) o.detail = "100 elements";
  return o;
}

struct Fixture {
  GroundRing k;
  std::vector<std::string> vars, rels;
};

const std::vector<Fixture>& flat_fixtures() {
  static const std::vector<Fixture> f{{ZZ, {"x"}, {"x^2"}},
                                      {ZZ, {"x"}, {"x^3"}},
                                      {ZZ, {"x", "y"}, {"x^2", "y^2"}},
                                      {GroundRing::rationals(), {"x"}, {"x^2"}},
                                      {GroundRing::integers_mod(4), {"x"}, {"x^2 - 2"}}};
  return f;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (const auto& f : flat_fixtures()) {
    const auto p = pres(f.k, f.vars, f.rels);
    const auto g = build_gamma_forms(p, 4);
    const auto hh = hh_assemble(g, 4);
    const auto hc = hc_assemble(g, 3).total;
    const auto a = FiniteAlgebra::from_presentation(p);
    const auto ohh = hh_oracle(a, 4);
    const auto ohc = hc_oracle(a, 3);
    for (int n = 0; n <= 4; ++n) {
      o.expect(hh[n] == ohh[n], p.to_string() + " HH_" + std::to_string(n) + ": " + show(hh[n], f.k) + " vs oracle " +
                                    show(ohh[n], f.k));
    }
    for (int n = 0; n <= 3; ++n) {
      o.expect(hc[n] == ohc[n], p.to_string() + " HC_" + std::to_string(n) + ": " + show(hc[n], f.k) + " vs oracle " +
                                    show(ohc[n], f.k));
    }
  }
  if (o.ok) o.detail = "5 algebras, HH_0..4 and HC_0..3";
  return o;
}

Outcome hodge_decomposition() {
  Outcome o;
  std::vector<Fixture> fixtures;
  for (const auto& f : flat_fixtures()) {
    if (f.k.is_integers()) fixtures.push_back(f);
  }
  for (const auto& f : fixtures) {
    const auto p = pres(f.k, f.vars, f.rels);
    const auto g = build_gamma_forms(p, 4);
    const auto hh = hh_assemble(g, 4);
    const auto weights = filtration_layers(g.complex, 4, TotalMode::Hochschild);
    const auto h = hodge_hh(Envelope(p), 4);
    for (int n = 0; n <= 4; ++n) {
      o.expect(h.total[n] == hh[n], p.to_string() + " HH_" + std::to_string(n));
      for (int q = 0; q <= n; ++q) {
        const auto a = h.layers[n].count(q) ? h.layers[n].at(q) : HomologyGroup{};
        const auto b = weights.layers[n].count(q) ? weights.layers[n].at(q) : HomologyGroup{};
        o.expect(a == b, p.to_string() + " layer (" + std::to_string(n) + "," + std::to_string(q) + "): " +
                             show(a, f.k) + " vs " + show(b, f.k));
      }
    }
  }
  if (o.ok) o.detail = std::to_string(fixtures.size()) + " algebras over Z, n <= 4, totals and layers";
  return o;
}

Outcome cyclic_layers() {
  Outcome o;
  for (const auto& p : {pres(ZZ, {"x"}, {"x^2"}), pres(ZZ, {"x", "y"}, {"x^2", "y^2"})}) {
    const auto layers = hc_layers_small(Envelope(p), 3);
    const auto hc = hc_assemble(build_gamma_forms(p, 3), 3).total;
    for (int n = 0; n <= 3; ++n) {
      std::size_t rank = 0;
      Integer order = 1;
      for (const auto& [l, g] : layers.layers[n]) {
        rank += g.free_rank;
        order *= torsion_order(g);
      }
      o.expect(rank == hc[n].free_rank && order == torsion_order(hc[n]),
               p.to_string() + " HC_" + std::to_string(n) + ": layers " + show(layers.total[n], ZZ) + " vs " +
                   show(hc[n], ZZ));
    }
  }
  if (o.ok) o.detail = "2 algebras, n <= 3";
  return o;
}

Outcome shukla() {
  Outcome o;
  for (long p : {2, 3, 5}) {
    const auto P = pres(ZZ, {}, {std::to_string(p)});
    const auto forms = hh_assemble(build_gamma_forms(P, 9), 9);
    const auto crys = hodge_hh(Envelope(P), 9).total;
    for (int n = 0; n <= 9; ++n) {
      const HomologyGroup want = n % 2 == 0 ? cyclic(p) : HomologyGroup{};
      o.expect(forms[n] == want, "forms HH_" + std::to_string(n) + " of Z/" + std::to_string(p) + " = " + show(forms[n], ZZ));
      o.expect(crys[n] == want, "crystalline HH_" + std::to_string(n) + " of Z/" + std::to_string(p) + " = " + show(crys[n], ZZ));
      o.expect(forms[n] == crys[n], "pipelines disagree");
    }
  }
  if (o.ok) o.detail = "p = 2, 3, 5, n <= 9";
  return o;
}

Outcome witness() {
  Outcome o;
  for (const auto& k : {ZZ, GroundRing::integers_mod(2)}) {
    const auto r = witness_nondegeneracy(k, 2);
    o.expect(r.cycle, k.to_string() + ": delta(gamma^2(dy)) != 0");
    o.expect(!r.boundary, k.to_string() + ": gamma^2(dy) is a boundary");
    o.expect(r.delta_beta_is_minus_p_gamma, k.to_string() + ": delta(gamma(dy) dz) != -2 gamma^2(dy)");
  }
  bool unit = false;
  try {
    witness_nondegeneracy(GroundRing::rationals(), 2);
  } catch (const UnitP&) {
    unit = true;
  }
  o.expect(unit, "Q: UnitP not raised");
  const auto q = witness_nondegeneracy(GroundRing::rationals(), 2, false);
  o.expect(q.boundary && q.preimage.has_value(), "Q: no preimage");
  if (o.ok) o.detail = "Z and Z/2 witnessed; Q preimage " + *q.preimage;
  return o;
}

Outcome model_independence() {
  Outcome o;
  struct Report {
    std::vector<HomologyGroup> hh, hc, crys;
    std::vector<std::map<int, HomologyGroup>> hh_layers, hc_layers;
    bool operator==(const Report& r) const {
      return hh == r.hh && hc == r.hc && crys == r.crys && hh_layers == r.hh_layers && hc_layers == r.hc_layers;
    }
  };
  auto report = [](const Presentation& p) {
    const auto g = build_gamma_forms(p, 3);
    const auto c = hc_assemble(g, 3);
    return Report{hh_assemble(g, 3), c.total, hodge_hh(Envelope(p), 3).total,
                  filtration_layers(g.complex, 3, TotalMode::Hochschild).layers, c.layers};
  };
  const auto base = report(pres(ZZ, {"x", "y"}, {"x^2", "y^2"}));
  int variants = 0;
  for (const auto& vars : {std::vector<std::string>{"x", "y"}, std::vector<std::string>{"y", "x"}}) {
    for (const auto& rels : {std::vector<std::string>{"x^2", "y^2"}, std::vector<std::string>{"y^2", "x^2"}}) {
      o.expect(report(pres(ZZ, vars, rels)) == base, "order vars " + vars[0] + vars[1] + ", rels " + rels[0]);
      ++variants;
    }
  }
  if (o.ok) o.detail = std::to_string(variants) + " orderings, n <= 3";
  return o;
}

Outcome smith_suite(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = oracle::random_int_matrix(rng, 1 + rng() % 8, 1 + rng() % 8, trial % 2 ? 20 : 3);
    const auto f = snf(m);
    o.expect(f.U * m * f.V == f.S, "S != UMV");
    const auto du = oracle::determinant(f.U), dv = oracle::determinant(f.V);
    o.expect(du * du == 1 && dv * dv == 1, "U or V not unimodular");
    Integer prev = 1;
    bool zero_seen = false;
    for (std::size_t i = 0; i < f.S.rows(); ++i) {
      for (const auto& [r, v] : (i < f.S.cols() ? f.S.column(i) : SparseMatrix::Column{})) {
        o.expect(r == i, "S not diagonal");
      }
    }
    for (std::size_t j = 0; j < f.S.cols(); ++j) {
      for (const auto& [r, v] : f.S.column(j)) o.expect(r == j, "S not diagonal");
    }
    for (std::size_t i = 0; i < std::min(f.S.rows(), f.S.cols()); ++i) {
      const Scalar d = f.S.get(i, i);
      o.expect(d >= 0 && d.get_den() == 1, "negative or fractional diagonal");
      const Integer di = d.get_num();
      if (di == 0) {
        zero_seen = true;
        continue;
      }
      o.expect(!zero_seen, "nonzero entry after a zero");
      o.expect(di % prev == 0, "divisibility chain broken");
      prev = di;
    }
  }
  if (o.ok) o.detail = "500 matrices up to 8x8";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // acceptance [seed] [criterion]
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 20240601;
  const int only = argc > 2 ? std::stoi(argv[2]) : 0;
  struct Criterion {
    int id;
    std::string name;
    double limit;  // seconds; 0 when untimed
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "algebra laws", 10, [&] { return algebra_laws(seed); }},
      {2, "mixed complex identities", 30, mixed_identities},
      {3, "contracting homotopy", 10, [&] { return homotopy_suite(seed + 1); }},
      {4, "forms vs bar oracle (HH, HC)", 120, oracle_equivalence},
      {5, "L^p layers vs forms HH", 60, hodge_decomposition},
      {6, "L'^p layers vs forms HC", 0, cyclic_layers},
      {7, "Shukla homology of Z/p", 10, shukla},
      {8, "non-degeneracy witness", 0, witness},
      {9, "generator and relation order", 0, model_independence},
      {10, "Smith normal form", 10, [&] { return smith_suite(seed + 2); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + "s";
    if (c.limit > 0) {
      timing += " (limit " + std::to_string(static_cast<int>(c.limit)) + "s)";
      if (secs >= c.limit) {
        o.ok = false;
        o.detail += "; over time";
      }
    }
    if (!o.ok) ++failed;
    std::printf("[%s] criterion %d: %s: %s, %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  if (!only) std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
