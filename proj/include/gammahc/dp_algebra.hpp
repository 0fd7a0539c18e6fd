#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gammahc/ground_ring.hpp"
#include "gammahc/sparse_matrix.hpp"

namespace gammahc {

enum class GeneratorKind { Polynomial, Exterior, DividedPower };

std::string to_string(GeneratorKind kind);

struct Generator {
  std::string name;
  int hdeg = 0;
  GeneratorKind kind = GeneratorKind::Polynomial;
  /// Gamma-weight carried by one factor (1 for the dV generators).
  int weight = 0;
  /// Internal weight used to truncate slices that are infinite over k.
  int filtration = 0;
};

/// Exponent vector over the generator table. Exterior exponents are 0 or 1,
/// a DividedPower exponent q stands for gamma^q.
using Monomial = std::vector<std::uint32_t>;
using Element = std::map<Monomial, Scalar>;

/// Free strictly graded-commutative algebra with divided powers on a fixed
/// generator table over a ground ring.
class GradedAlgebra {
 public:
  GradedAlgebra() : ring_(GroundRing::integers()) {}
  GradedAlgebra(GroundRing ring, std::vector<Generator> generators);

  const GroundRing& ring() const { return ring_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  Monomial one() const { return Monomial(gens_.size(), 0); }
  Monomial unit_monomial(std::size_t gen, std::uint32_t exponent = 1) const;
  Element element(const Monomial& m, const Scalar& c = 1) const;
  Element generator_element(std::size_t gen) const { return element(unit_monomial(gen)); }

  int hdeg(const Monomial& m) const;
  int weight(const Monomial& m) const;
  int filtration(const Monomial& m) const;

  std::string format(const Monomial& m) const;
  std::string format(const Element& e) const;

 private:
  GroundRing ring_;
  std::vector<Generator> gens_;
};

/// a += c * m, dropping coefficients that vanish in the ring.
void add_term(Element& a, const Monomial& m, const Scalar& c, const GroundRing& ring);
Element add(const Element& a, const Element& b, const GroundRing& ring);
Element scale(const Element& a, const Scalar& c, const GroundRing& ring);

/// Product of basis monomials: coefficient (binomials and Koszul sign) and
/// the resulting monomial, or nullopt when the product vanishes.
std::optional<std::pair<Scalar, Monomial>> mul_monomials(const GradedAlgebra& alg, const Monomial& a,
                                                         const Monomial& b);
Element mul(const GradedAlgebra& alg, const Element& a, const Element& b);

/// Monomials of exact homological degree and Gamma-weight whose internal
/// weight is at most `filtration_bound`, ordered by total exponent and then
/// by exponent vector (lexicographically descending). Throws InfiniteSlice
/// when some generator is unconstrained by all three gradings.
std::vector<Monomial> basis_slice(const GradedAlgebra& alg, int hdeg, int weight, int filtration_bound);

/// Derivation of homological degree `degree` given by its values on the
/// generators; extended by the graded Leibniz rule and on divided powers by
/// gamma^n(x) -> gamma^(n-1)(x) * value(x).
struct GammaDerivation {
  int degree = -1;
  std::vector<std::optional<Element>> values;
};

Element derive(const GradedAlgebra& alg, const GammaDerivation& deriv, const Element& e);
Element derive_monomial(const GradedAlgebra& alg, const GammaDerivation& deriv, const Monomial& m);

/// Column j holds the coordinates of deriv(source[j]) in `target`. Throws
/// TruncationOverflow when an image term lies outside the target slice.
SparseMatrix derivation_matrix(const GradedAlgebra& alg, const GammaDerivation& deriv,
                               const std::vector<Monomial>& source, const std::vector<Monomial>& target);

/// The algebra K = Lambda(V) (x) Lambda(W) (x) Gamma(dW) with derivation
/// D(dw) = w and the contracting homotopy h of the augmentation ideal.
struct ContractibleAlgebra {
  GradedAlgebra algebra;  // V generators first, then each w followed by dw
  std::size_t num_v = 0;
  std::size_t num_w = 0;
  GammaDerivation D;

  std::size_t w_index(std::size_t i) const { return num_v + 2 * i; }
  std::size_t dw_index(std::size_t i) const { return num_v + 2 * i + 1; }
  /// Sum of exponents of the W generators (the power of the ideal I = <W>).
  std::uint32_t w_degree(const Monomial& m) const;
  /// True when the monomial has positive W or dW content.
  bool in_augmentation_ideal(const Monomial& m) const;
};

/// V and W are given as (name, hdeg) pairs; kinds follow the parity.
ContractibleAlgebra make_contractible(GroundRing ring, const std::vector<std::pair<std::string, int>>& v,
                                      const std::vector<std::pair<std::string, int>>& w);

/// Throws NotInIdeal when e has a term outside the augmentation ideal.
Element homotopy_h(const ContractibleAlgebra& k, const Element& e);

}  // namespace gammahc
