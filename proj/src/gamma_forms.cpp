#include "gammahc/gamma_forms.hpp"

#include <algorithm>

#include "gammahc/error.hpp"
#include "gammahc/linalg.hpp"

namespace gammahc {

namespace {

constexpr int kUnbounded = 1 << 20;

Element embed(const Element& e, std::size_t size) {
  Element out;
  for (const auto& [m, c] : e) {
    Monomial big(size, 0);
    std::copy(m.begin(), m.end(), big.begin());
    out.emplace(std::move(big), c);
  }
  return out;
}

// max of m*eps + eta + m*j over eps, eta in {0,1}, eps + eta + 2j <= n
int top_weight(int m, int n) {
  int best = 0;
  for (int eps = 0; eps <= 1; ++eps) {
    for (int eta = 0; eta <= 1; ++eta) {
      const int rest = n - eps - eta;
      if (rest < 0) continue;
      best = std::max(best, m * eps + eta + m * (rest / 2));
    }
  }
  return best;
}

}  // namespace

FormsAlgebra forms_algebra(const FreeDGA& model) {
  const auto& base = model.algebra;
  std::vector<Generator> gens = base.generators();
  const std::size_t nv = gens.size();
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& v = base.generator(i);
    std::string name = "d" + v.name;
    while (std::any_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.name == name; })) {
      name = "_" + name;
    }
    const auto kind = v.hdeg % 2 ? GeneratorKind::DividedPower : GeneratorKind::Exterior;
    gens.push_back({name, v.hdeg + 1, kind, 1, v.filtration});
  }
  FormsAlgebra f{GradedAlgebra(base.ring(), gens), {-1, {}}, {1, {}}};
  const std::size_t n = gens.size();
  f.d.values.assign(n, Element{});
  for (std::size_t i = 0; i < nv; ++i) f.d.values[i] = f.algebra.generator_element(nv + i);
  f.delta.values.assign(n, Element{});
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& bv = model.boundary.values.at(i);
    const Element dv = bv ? embed(*bv, n) : Element{};
    f.delta.values[i] = dv;
    f.delta.values[nv + i] = scale(derive(f.algebra, f.d, dv), -1, f.algebra.ring());
  }
  return f;
}

int auto_filtration_bound(const Presentation& p, int n_max) {
  int bound = 0;
  for (const auto& lead : p.require_quasi_monic()) {
    const int m = static_cast<int>(lead.power);
    bound += m - 1 + top_weight(m, n_max + 2);
  }
  return bound;
}

GammaFormsComplex build_gamma_forms(const FreeDGA& model, int n_max, std::optional<int> filtration_bound) {
  if (n_max < 0) throw DimensionMismatch("n_max must be non-negative");
  if (!check_boundary_square(model)) throw CompositionNonzero("model boundary does not square to zero");
  if (!filtration_bound && model.has_degree_zero_generators()) {
    throw InfiniteSlice("model has generators of degree 0; a filtration bound is required");
  }
  auto f = forms_algebra(model);
  const int top = n_max + 1;
  GammaFormsComplex g{model, f.algebra, f.delta, f.d, n_max, filtration_bound.value_or(kUnbounded),
                      DoubleMixedComplex(model.algebra.ring(), top), {}};
  for (int n = 0; n <= top; ++n) {
    for (int q = 0; q <= n; ++q) {
      const Bidegree s{n - q, q};
      auto b = basis_slice(g.algebra, n, q, g.filtration_bound);
      g.complex.set_slice(s, b.size());
      std::vector<std::string> names;
      for (const auto& m : b) names.push_back(g.algebra.format(m));
      g.complex.labels[s] = std::move(names);
      g.basis[s] = std::move(b);
    }
  }
  for (const auto& [s, b] : g.basis) {
    const auto [p, q] = s;
    if (p >= 1) g.complex.set_partial(s, derivation_matrix(g.algebra, g.delta, b, g.basis.at({p - 1, q})));
    if (p + q < top) g.complex.set_B(s, derivation_matrix(g.algebra, g.d, b, g.basis.at({p, q + 1})));
  }
  return g;
}

GammaFormsComplex build_gamma_forms(const Presentation& p, int n_max, std::optional<int> filtration_bound) {
  const int bound = filtration_bound ? *filtration_bound : auto_filtration_bound(p, n_max);
  return build_gamma_forms(koszul_model(p), n_max, bound);
}

std::map<Bidegree, HomologyGroup> e2_hh(const GammaFormsComplex& g, int n_max) {
  if (n_max > g.n_max) {
    throw WindowTooSmall("E^2 through degree " + std::to_string(n_max) + " needs a complex built with n_max >= " +
                         std::to_string(n_max));
  }
  std::map<Bidegree, HomologyGroup> out;
  const auto& m = g.complex;
  for (int n = 0; n <= n_max; ++n) {
    for (int q = 0; q <= n; ++q) {
      const Bidegree s{n - q, q};
      out[s] = homology_at(m.partial({n - q + 1, q}), m.partial(s), m.ring());
    }
  }
  return out;
}

std::vector<HomologyGroup> hh_assemble(const GammaFormsComplex& g, int n_max) {
  if (g.model.max_generator_degree() >= 2) {
    throw HypothesisViolated("model has a generator of degree >= 2; E^2 need not be E^infinity");
  }
  const auto e2 = e2_hh(g, n_max);
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<HomologyGroup> parts;
    for (int q = 0; q <= n; ++q) parts.push_back(e2.at({n - q, q}));
    out.push_back(direct_sum(parts, g.complex.ring()));
  }
  return out;
}

FilteredGroups hc_assemble(const GammaFormsComplex& g, int n_max) {
  return filtration_layers(g.complex, n_max, TotalMode::Cyclic);
}

WitnessReport witness_nondegeneracy(const GroundRing& k, int p, bool require_non_unit) {
  if (p < 2) throw DimensionMismatch("p must be at least 2");
  if (require_non_unit && k.is_unit(Scalar(p))) {
    throw UnitP(std::to_string(p) + " is invertible in " + k.to_string() + "; the class is a boundary");
  }
  auto start = make_free_dga(k, {{"y", 1, GeneratorKind::Exterior, 0, 0}, {"z", 2, GeneratorKind::Polynomial, 0, 0}},
                             {{"z", "y"}});
  const auto tower = tate_extend(TateTower{start, {}}, 2 * p + 2);
  const auto f = forms_algebra(tower.model);
  const auto& alg = f.algebra;
  const std::size_t dy = *alg.index_of("dy");
  const std::size_t dz = *alg.index_of("dz");

  const Element gamma = alg.element(alg.unit_monomial(dy, p));
  Monomial bm = alg.unit_monomial(dy, p - 1);
  bm[dz] = 1;
  const Element beta = alg.element(bm);

  WitnessReport r;
  r.ring = k.to_string();
  r.p = p;
  r.gamma = alg.format(gamma);
  r.beta = alg.format(beta);
  r.cycle = derive(alg, f.delta, gamma).empty();
  r.delta_beta_is_minus_p_gamma = derive(alg, f.delta, beta) == scale(gamma, -p, k);

  const auto source = basis_slice(alg, 2 * p + 1, p, kUnbounded);
  const auto target = basis_slice(alg, 2 * p, p, kUnbounded);
  const SparseMatrix delta = derivation_matrix(alg, f.delta, source, target);
  std::vector<Scalar> b(target.size(), Scalar(0));
  const auto pos = std::find(target.begin(), target.end(), gamma.begin()->first) - target.begin();
  b.at(pos) = 1;
  const auto x = preimage(delta, b, k);
  r.boundary = x.has_value();
  if (x) {
    Element pre;
    for (std::size_t i = 0; i < x->size(); ++i) {
      if ((*x)[i] != 0) add_term(pre, source[i], (*x)[i], k);
    }
    r.preimage = alg.format(pre);
  }
  return r;
}

}  // namespace gammahc
