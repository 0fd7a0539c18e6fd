#include <random>

#include "doctest.h"
#include "gammahc/dp_algebra.hpp"
#include "gammahc/error.hpp"
#include "random_algebra.hpp"

using namespace gammahc;

namespace {

const GroundRing ZZ = GroundRing::integers();

int sign(int a, int b) { return (a * b) % 2 ? -1 : 1; }

}  // namespace

TEST_CASE("generator table validation") {
  CHECK_THROWS_AS(GradedAlgebra(ZZ, {{"x", 1, GeneratorKind::Polynomial, 0, 0}}), InvalidGenerator);
  CHECK_THROWS_AS(GradedAlgebra(ZZ, {{"x", 2, GeneratorKind::Exterior, 0, 0}}), InvalidGenerator);
  CHECK_THROWS_AS(GradedAlgebra(ZZ, {{"x", 0, GeneratorKind::Polynomial, 0, 1},
                                     {"x", 1, GeneratorKind::Exterior, 0, 1}}),
                  InvalidGenerator);
}

TEST_CASE("basis_slice examples") {
  GradedAlgebra ext(ZZ, {{"dx", 1, GeneratorKind::Exterior, 1, 1}});
  CHECK(basis_slice(ext, 2, 2, 10).empty());

  GradedAlgebra dp(ZZ, {{"dy", 2, GeneratorKind::DividedPower, 1, 0}});
  for (int p = 1; p <= 5; ++p) {
    auto s = basis_slice(dp, 2 * p, p, 0);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Monomial{static_cast<std::uint32_t>(p)});
  }

  GradedAlgebra poly(ZZ, {{"x", 0, GeneratorKind::Polynomial, 0, 1}});
  auto s = basis_slice(poly, 0, 0, 2);
  CHECK(s == std::vector<Monomial>{{0}, {1}, {2}});

  GradedAlgebra free(ZZ, {{"x", 0, GeneratorKind::Polynomial, 0, 0}});
  CHECK_THROWS_AS(basis_slice(free, 0, 0, 3), InfiniteSlice);
}

TEST_CASE("mul examples") {
  GradedAlgebra a(ZZ, {{"x", 0, GeneratorKind::Polynomial, 0, 1},
                       {"dx", 1, GeneratorKind::Exterior, 1, 1},
                       {"y", 1, GeneratorKind::Exterior, 0, 2},
                       {"dy", 2, GeneratorKind::DividedPower, 1, 2}});
  auto dy = a.generator_element(3);
  CHECK(mul(a, dy, dy) == a.element(Monomial{0, 0, 0, 2}, 2));
  auto dx = a.generator_element(1);
  CHECK(mul(a, dx, dx).empty());
  auto xdx = a.element(Monomial{1, 1, 0, 0});
  auto y = a.generator_element(2);
  CHECK(mul(a, xdx, y) == scale(mul(a, y, xdx), -1, ZZ));
}

TEST_CASE("divided power products follow binomials") {
  GradedAlgebra a(ZZ, {{"u", 2, GeneratorKind::DividedPower, 1, 1}, {"v", 4, GeneratorKind::DividedPower, 1, 1}});
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::uint32_t p = 0; p <= 8; ++p) {
      for (std::uint32_t q = 0; p + q <= 8; ++q) {
        auto lhs = mul(a, a.element(a.unit_monomial(g, p)), a.element(a.unit_monomial(g, q)));
        CHECK(lhs == a.element(a.unit_monomial(g, p + q), Scalar(binomial(p + q, p))));
      }
    }
  }
}

TEST_CASE("random algebra laws") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto alg = fixtures::random_table(rng, trial % 3 ? ZZ : GroundRing::integers_mod(6));
    const int da = static_cast<int>(rng() % 5), db = static_cast<int>(rng() % 5), dc = static_cast<int>(rng() % 5);
    const auto a = fixtures::random_homogeneous(rng, alg, da);
    const auto b = fixtures::random_homogeneous(rng, alg, db);
    const auto c = fixtures::random_homogeneous(rng, alg, dc);
    CHECK(mul(alg, mul(alg, a, b), c) == mul(alg, a, mul(alg, b, c)));
    CHECK(mul(alg, a, b) == scale(mul(alg, b, a), sign(da, db), alg.ring()));
    for (std::size_t i = 0; i < alg.size(); ++i) {
      if (alg.generator(i).kind != GeneratorKind::Exterior) continue;
      auto g = alg.generator_element(i);
      CHECK(mul(alg, g, g).empty());
    }
    for (int degree : {-1, 1}) {
      const auto d = fixtures::random_derivation(rng, alg, degree);
      const auto lhs = derive(alg, d, mul(alg, a, b));
      const auto rhs = add(mul(alg, derive(alg, d, a), b),
                           scale(mul(alg, a, derive(alg, d, b)), da % 2 ? -1 : 1, alg.ring()), alg.ring());
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("derive examples") {
  // x, dx, y, dy with dy = d(y), y odd so dy is a divided power
  GradedAlgebra a(ZZ, {{"x", 0, GeneratorKind::Polynomial, 0, 1},
                       {"dx", 1, GeneratorKind::Exterior, 1, 1},
                       {"y", 1, GeneratorKind::Exterior, 0, 2},
                       {"dy", 2, GeneratorKind::DividedPower, 1, 2}});
  GammaDerivation d{1, {a.generator_element(1), Element{}, a.generator_element(3), Element{}}};
  // d(g3(dy)) = 0 and d(y g2(dy)) = g1(dy) g2(dy) = 3 g3(dy)
  CHECK(derive(a, d, a.element(Monomial{0, 0, 1, 2})) == a.element(Monomial{0, 0, 0, 3}, 3));
  CHECK(derive(a, d, a.element(Monomial{3, 0, 0, 0})) == a.element(Monomial{2, 1, 0, 0}, 3));

  // delta with dy -> -2 x dx for the relation x^2
  GammaDerivation delta{-1, {Element{}, Element{}, a.element(Monomial{2, 0, 0, 0}),
                             a.element(Monomial{1, 1, 0, 0}, -2)}};
  auto src = basis_slice(a, 2, 1, 2);
  auto dst = basis_slice(a, 1, 1, 2);
  auto dy_pos = std::find(src.begin(), src.end(), Monomial{0, 0, 0, 1}) - src.begin();
  auto m = derivation_matrix(a, delta, src, dst);
  auto xdx_pos = std::find(dst.begin(), dst.end(), Monomial{1, 1, 0, 0}) - dst.begin();
  CHECK(m.get(xdx_pos, dy_pos) == -2);
  CHECK(m.column(dy_pos).size() == 1);

  GammaDerivation partial{-1, {Element{}}};
  CHECK_THROWS_AS(derive(a, partial, a.generator_element(2)), UndefinedGenerator);

  // the image leaves a window that is too small
  auto src0 = basis_slice(a, 1, 0, 2);
  auto dst0 = basis_slice(a, 0, 0, 1);
  CHECK_THROWS_AS(derivation_matrix(a, delta, src0, dst0), TruncationOverflow);
}

TEST_CASE("contracting homotopy examples") {
  auto k = make_contractible(ZZ, {}, {{"w", 2}});
  const auto& a = k.algebra;
  // even w: h(w^3) = w^2 dw
  CHECK(homotopy_h(k, a.element(Monomial{3, 0})) == a.element(Monomial{2, 1}));
  CHECK(homotopy_h(k, a.element(Monomial{3, 1})).empty());
  CHECK_THROWS_AS(homotopy_h(k, a.element(Monomial{0, 0})), NotInIdeal);

  auto odd = make_contractible(ZZ, {}, {{"w", 1}});
  const auto& b = odd.algebra;
  CHECK(homotopy_h(odd, b.element(Monomial{1, 2})) == b.element(Monomial{0, 3}));
  CHECK(homotopy_h(odd, b.element(Monomial{0, 2})).empty());
}

TEST_CASE("contracting homotopy identities on random elements") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, int>> v, w;
    const std::size_t nv = rng() % 4, nw = 1 + rng() % 3;
    for (std::size_t i = 0; i < nv; ++i) v.push_back({"v" + std::to_string(i), static_cast<int>(rng() % 4)});
    for (std::size_t i = 0; i < nw; ++i) w.push_back({"w" + std::to_string(i), static_cast<int>(rng() % 4)});
    auto k = make_contractible(ZZ, v, w);
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
    CHECK(add(derive(alg, k.D, he), de.empty() ? Element{} : homotopy_h(k, de), ZZ) == e);
    CHECK((he.empty() || homotopy_h(k, he).empty()));
    if (!de.empty()) CHECK(derive(alg, k.D, homotopy_h(k, de)) == de);
    for (const auto& [m, c] : e) {
      const auto hm = homotopy_h(k, alg.element(m));
      for (const auto& [mm, cc] : hm) CHECK(k.w_degree(mm) + 1 == k.w_degree(m));
    }
    ++checked;
  }
  CHECK(checked == 100);
}
