#include "doctest.h"
#include "gammahc/bar_oracle.hpp"
#include "gammahc/crystalline.hpp"
#include "gammahc/error.hpp"
#include "gammahc/gamma_forms.hpp"

using namespace gammahc;

namespace {

const GroundRing ZZ = GroundRing::integers();

Envelope env(const GroundRing& k, std::vector<std::string> vars, std::vector<std::string> rels) {
  return Envelope(Presentation::parse(k, vars, rels));
}

HomologyGroup group(std::size_t free, std::vector<long> tors) {
  HomologyGroup g;
  g.free_rank = free;
  for (long t : tors) g.invariant_factors.push_back(Integer(t));
  return g;
}

Integer torsion_order(const HomologyGroup& g) {
  Integer o = 1;
  for (const auto& d : g.invariant_factors) o *= d;
  return o;
}

}  // namespace

TEST_CASE("envelope slices and products") {
  auto e = env(ZZ, {"x"}, {"x^2"});
  auto s = envelope_slice(e, 1, 1);
  REQUIRE(s.size() == 4);
  CHECK(e.format(s[0]) == "1");
  CHECK(e.format(s[1]) == "x");
  CHECK(e.format(s[2]) == "g1(x^2)");
  CHECK(e.format(s[3]) == "x*g1(x^2)");
  auto c = env(ZZ, {}, {"5"});
  auto cs = envelope_slice(c, 2, 0);
  REQUIRE(cs.size() == 3);
  CHECK(c.format(cs[2]) == "g2(5)");

  const CrystalElement g1{{e.word({0}, {1}), Scalar(1)}};
  CHECK(e.multiply(g1, g1) == CrystalElement{{e.word({0}, {2}), Scalar(2)}});
  // x * x = f = gamma_1(f)
  const CrystalElement x{{e.word({1}, {0}), Scalar(1)}};
  CHECK(e.multiply(x, x) == g1);
  CHECK_THROWS_AS(env(ZZ, {"x"}, {"2x^2"}), NotQuasiMonic);
}

TEST_CASE("dbar") {
  auto e = env(ZZ, {"x"}, {"x^2"});
  const CrystalElement g2{{e.word({0}, {2}), Scalar(1)}};
  // gamma_1(x^2) 2x dx
  CHECK(dbar(e, g2) == CrystalElement{{e.word({1}, {1}, {0}), Scalar(2)}});
  auto big = env(ZZ, {"x"}, {"x^5"});
  const CrystalElement x3{{big.word({3}, {0}), Scalar(1)}};
  CHECK(dbar(big, x3) == CrystalElement{{big.word({2}, {0}, {0}), Scalar(3)}});

  // d^2 = 0 and d lowers the gamma-filtration by at most one
  for (auto f : {env(ZZ, {"x", "y"}, {"x^2 - y", "y^3 + x*y"}), env(GroundRing::integers_mod(4), {"x"}, {"x^2 - 2"}),
                 env(ZZ, {"x", "y"}, {"x^2", "y^2"})}) {
    for (std::uint32_t w = 0; w <= 3; ++w) {
      for (std::uint32_t j = 0; j <= f.num_variables(); ++j) {
        for (const auto& word : f.words(w, j)) {
          const CrystalElement one{{word, Scalar(1)}};
          const auto d1 = dbar(f, one);
          for (const auto& [t, c] : d1) {
            CHECK(t.weight() + 1 >= w);
            CHECK(t.forms.size() == j + 1);
          }
          CHECK(dbar(f, d1).empty());
        }
      }
    }
  }
}

TEST_CASE("L complexes of the dual numbers") {
  auto e = env(ZZ, {"x"}, {"x^2"});
  auto l0 = L_complex(e, 0);
  CHECK(l0.homology(0) == group(2, {}));
  auto l1 = L_complex(e, 1);
  CHECK(l1.composes_to_zero());
  CHECK(l1.homology(0) == group(1, {2}));
  CHECK(l1.homology(1) == group(1, {}));
  auto lp1 = Lprime_complex(e, 1);
  CHECK(lp1.homology(0) == group(0, {2}));
  auto h = hodge_hh(e, 2);
  CHECK(h.total[0] == group(2, {}));
  CHECK(h.total[1] == group(1, {2}));
  CHECK(h.total[2] == group(1, {}));
  auto c = hc_layers_small(e, 1);
  CHECK(c.total[1] == group(0, {2}));
  CHECK_THROWS_AS(hc_layers_small(env(ZZ, {"x", "y", "z"}, {"x^2", "y^2", "z^2"}), 2), TooManyVariables);
}

TEST_CASE("Shukla fixture through L complexes") {
  for (long p : {2, 3, 5}) {
    auto e = env(ZZ, {}, {std::to_string(p)});
    auto h = hodge_hh(e, 9);
    for (int n = 0; n <= 9; ++n) CHECK(h.total[n] == (n % 2 == 0 ? group(0, {p}) : group(0, {})));
    auto g = build_gamma_forms(Presentation::parse(ZZ, {}, {std::to_string(p)}), 9);
    CHECK(hh_assemble(g, 9) == h.total);
  }
}

TEST_CASE("L complexes against the forms pipeline") {
  struct Fixture {
    GroundRing k;
    std::vector<std::string> vars, rels;
  };
  std::vector<Fixture> fixtures{{ZZ, {"x"}, {"x^2"}},
                                {ZZ, {"x"}, {"x^3"}},
                                {ZZ, {"x", "y"}, {"x^2", "y^2"}},
                                {ZZ, {}, {"3"}},
                                {GroundRing::rationals(), {"x"}, {"x^2"}},
                                {GroundRing::integers_mod(4), {"x"}, {"x^2 - 2"}}};
  for (const auto& f : fixtures) {
    auto p = Presentation::parse(f.k, f.vars, f.rels);
    Envelope e(p);
    auto g = build_gamma_forms(p, 4);
    auto h = hodge_hh(e, 4);
    auto weights = filtration_layers(g.complex, 4, TotalMode::Hochschild);
    CHECK(h.total == hh_assemble(g, 4));
    for (int n = 0; n <= 4; ++n) {
      for (int q = 0; q <= n; ++q) {
        const auto a = h.layers[n].count(q) ? h.layers[n].at(q) : HomologyGroup{};
        const auto b = weights.layers[n].count(q) ? weights.layers[n].at(q) : HomologyGroup{};
        CHECK_MESSAGE(a == b, p.to_string(), " n=", n, " p=", q, " ", a.to_string(f.k), " vs ", b.to_string(f.k));
      }
    }
    if (f.vars.size() <= 2) {
      auto c = hc_layers_small(e, 3);
      auto hc = hc_assemble(g, 3);
      for (int n = 0; n <= 3; ++n) {
        std::size_t rank = 0;
        Integer order = 1;
        for (const auto& [l, grp] : c.layers[n]) {
          rank += grp.free_rank;
          order *= torsion_order(grp);
        }
        CHECK_MESSAGE(rank == hc.total[n].free_rank, p.to_string(), " HC_", n);
        CHECK_MESSAGE(order == torsion_order(hc.total[n]), p.to_string(), " HC_", n, " ", c.total[n].to_string(f.k),
                      " vs ", hc.total[n].to_string(f.k));
        for (const auto& [l, grp] : c.layers[n]) {
          const auto other = hc.layers[n].count(l) ? hc.layers[n].at(l) : HomologyGroup{};
          if (grp != other) MESSAGE(p.to_string(), " HC_", n, " layer ", l, " ", grp.to_string(f.k), " vs ", other.to_string(f.k));
        }
      }
    }
  }
}
