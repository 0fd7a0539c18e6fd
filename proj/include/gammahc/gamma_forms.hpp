#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gammahc/dp_algebra.hpp"
#include "gammahc/homology_group.hpp"
#include "gammahc/mixed_complex.hpp"
#include "gammahc/model.hpp"

namespace gammahc {

/// Lambda(V) (x) Gamma(dV) with delta (extending the model boundary) and the
/// de Rham derivation d, truncated to total degree n_max + 1. Slice (p, q)
/// holds the monomials of Gamma-weight q and homological degree p + q.
struct GammaFormsComplex {
  FreeDGA model;
  GradedAlgebra algebra;  // V generators, then d of each in the same order
  GammaDerivation delta;  // degree -1
  GammaDerivation d;      // degree +1
  int n_max = 0;
  int filtration_bound = 0;
  DoubleMixedComplex complex;
  std::map<Bidegree, std::vector<Monomial>> basis;
};

/// The algebra Lambda(V) (x) Gamma(dV) of a model with delta and d.
struct FormsAlgebra {
  GradedAlgebra algebra;
  GammaDerivation delta;
  GammaDerivation d;
};
FormsAlgebra forms_algebra(const FreeDGA& model);

/// Internal-weight bound that makes the truncated Koszul forms complex of a
/// quasi-monic presentation exact through degree n_max + 1. Throws
/// NotQuasiMonic.
int auto_filtration_bound(const Presentation& p, int n_max);

/// Builds the complex on slices p + q <= n_max + 1. A bound is required when
/// the model has generators of degree zero (InfiniteSlice otherwise).
GammaFormsComplex build_gamma_forms(const FreeDGA& model, int n_max, std::optional<int> filtration_bound = {});
/// Koszul model of a quasi-monic presentation with the automatic bound.
GammaFormsComplex build_gamma_forms(const Presentation& p, int n_max, std::optional<int> filtration_bound = {});

/// E^2_{p,q} = H at slice (p, q) under delta, for p + q <= n_max.
std::map<Bidegree, HomologyGroup> e2_hh(const GammaFormsComplex& g, int n_max);

/// HH_n = sum over p + q = n of E^2_{p,q}. Throws HypothesisViolated when the
/// model has a generator of degree >= 2.
std::vector<HomologyGroup> hh_assemble(const GammaFormsComplex& g, int n_max);

/// HC totals and weight layers of the cyclic totalization.
FilteredGroups hc_assemble(const GammaFormsComplex& g, int n_max);

struct WitnessReport {
  std::string ring;
  int p = 0;
  bool cycle = false;                        // delta(gamma^p(dy)) = 0
  bool boundary = false;                     // gamma^p(dy) lies in the image of delta
  bool delta_beta_is_minus_p_gamma = false;  // delta(gamma^(p-1)(dy) dz) = -p gamma^p(dy)
  std::string gamma;                         // gamma^p(dy) as printed
  std::string beta;
  std::optional<std::string> preimage;       // a delta-preimage when one exists
};

/// Model y, z (dz = y) of k tate-extended through degree 2p + 2, and the
/// three facts about gamma^p(dy). Throws UnitP when p is invertible in k
/// unless require_non_unit is false.
WitnessReport witness_nondegeneracy(const GroundRing& k, int p, bool require_non_unit = true);

}  // namespace gammahc
