#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gammahc/homology_group.hpp"
#include "gammahc/linalg.hpp"
#include "gammahc/mixed_complex.hpp"
#include "gammahc/model.hpp"

namespace gammahc {

/// x^alpha gamma^Q(f) dx_J: alpha over the variables, Q over the relations,
/// J a strictly increasing list of variable indices.
struct CrystalWord {
  Exponents alpha;
  std::vector<std::uint32_t> q;
  std::vector<std::uint32_t> forms;

  std::uint32_t weight() const;
  bool operator<(const CrystalWord& o) const;
  bool operator==(const CrystalWord& o) const;
};

using CrystalElement = std::map<CrystalWord, Scalar>;

/// Divided-power envelope of a quasi-monic presentation and its
/// crystalline complex. Elements are kept in normal form: alpha below the
/// leading powers, using f_k gamma^Q = (q_k + 1) gamma^{Q + e_k}.
class Envelope {
 public:
  /// Throws NotQuasiMonic.
  explicit Envelope(Presentation p);

  const Presentation& presentation() const { return p_; }
  const GroundRing& ring() const { return p_.ring(); }
  std::size_t num_variables() const { return p_.variables().size(); }
  std::size_t num_relations() const { return p_.relations().size(); }
  /// Constant relation values c_k (empty optional for the others).
  const std::vector<std::optional<Scalar>>& constants() const { return constants_; }

  CrystalElement normalize(const CrystalElement& e) const;
  /// Product of two elements (forms wedge with the Koszul sign).
  CrystalElement multiply(const CrystalElement& a, const CrystalElement& b) const;
  CrystalWord word(const Exponents& alpha, const std::vector<std::uint32_t>& q,
                   const std::vector<std::uint32_t>& forms = {}) const;

  /// Normal words with |Q| = weight and |J| = form_degree.
  std::vector<CrystalWord> words(std::uint32_t weight, std::uint32_t form_degree) const;

  std::string format(const CrystalWord& w) const;
  std::string format(const CrystalElement& e) const;

 private:
  Presentation p_;
  std::vector<std::optional<Scalar>> constants_;
  std::vector<Exponents> normal_;
};

/// Words gamma^Q x^alpha (no forms) with |Q| <= weight and |alpha| <= poly_bound.
std::vector<CrystalWord> envelope_slice(const Envelope& e, std::uint32_t weight, std::uint32_t poly_bound);

/// The gamma-derivation extending de Rham d.
CrystalElement dbar(const Envelope& e, const CrystalElement& x);

/// Finite chain complex of presented k-modules; d[i] maps position i to i - 1
/// (d[0] is the zero map to nothing).
struct PresentedComplex {
  GroundRing ring = GroundRing::integers();
  std::vector<std::vector<CrystalWord>> basis;
  std::vector<SparseMatrix> relations;
  std::vector<SparseMatrix> d;

  std::size_t length() const { return basis.size(); }
  HomologyGroup homology(int position) const;
  bool composes_to_zero() const;
};

/// L^p: position i holds F_i Omega^{p-i} / F_{i+1}, i = 0..p.
PresentedComplex L_complex(const Envelope& e, int p);
/// L'^p: position i holds Omega^{p-i} / F_{i+1}, i = 0..p.
PresentedComplex Lprime_complex(const Envelope& e, int p);

/// Layers HH^p_n = H_{n-p}(L^p) (keyed by p) and their direct sums.
FilteredGroups hodge_hh(const Envelope& e, int n_max);
/// Layers HC^p_n = H_{n-p}(L'^p); throws TooManyVariables beyond two variables.
FilteredGroups hc_layers_small(const Envelope& e, int n_max);

}  // namespace gammahc
