#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gammahc/dp_algebra.hpp"
#include "gammahc/ground_ring.hpp"
#include "gammahc/homology_group.hpp"

namespace gammahc {

/// Polynomial in the presentation variables: exponent vector -> coefficient.
using Exponents = std::vector<std::uint32_t>;
using Polynomial = std::map<Exponents, Scalar>;

/// Parses "x^2 - 2*x*y + 3" style sums. Throws ParseError with the column
/// (1-based) of the offending character.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);
std::string format_polynomial(const Polynomial& f, const std::vector<std::string>& variables);
int total_degree(const Polynomial& f);

/// Relation i has leading term x_{var}^{power} with unit coefficient and all
/// other terms of smaller total degree.
struct LeadingPower {
  std::size_t relation = 0;
  std::size_t variable = 0;
  std::uint32_t power = 0;
};

struct Reduction {
  Polynomial normal_form;
  /// f = normal_form + sum_k quotients[k] * relation_k (indices into the
  /// relation list; constant relations get zero quotients).
  std::vector<Polynomial> quotients;
};

/// A = k[x_1..x_n] / (f_1..f_r).
class Presentation {
 public:
  Presentation(GroundRing ring, std::vector<std::string> variables, std::vector<Polynomial> relations);
  static Presentation parse(const GroundRing& ring, const std::vector<std::string>& variables,
                            const std::vector<std::string>& relations);

  const GroundRing& ring() const { return ring_; }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Polynomial>& relations() const { return rels_; }

  /// Leading powers, one per non-constant relation covering every variable,
  /// when the presentation is quasi-monic. Relations are stored normalized
  /// so that the leading coefficient is 1.
  const std::optional<std::vector<LeadingPower>>& quasi_monic() const { return qm_; }
  bool is_quasi_monic() const { return qm_.has_value(); }
  /// Indices of the constant relations (elements of k).
  std::vector<std::size_t> constant_relations() const;

  /// Throws NotQuasiMonic when no leading data exists.
  const std::vector<LeadingPower>& require_quasi_monic() const;

  /// Normal form supported on {x^a : a_i < m_i} together with quotients.
  /// Constant relations are ignored here.
  Reduction reduce_with_quotients(const Polynomial& f) const;
  Polynomial reduce(const Polynomial& f) const { return reduce_with_quotients(f).normal_form; }
  /// The exponents {a : a_i < m_i} in lexicographic order.
  std::vector<Exponents> normal_monomials() const;

  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  std::string to_string() const;

 private:
  GroundRing ring_;
  std::vector<std::string> vars_;
  std::vector<Polynomial> rels_;
  std::optional<std::vector<LeadingPower>> qm_;
};

/// Free chain algebra Lambda(V) with its boundary.
struct FreeDGA {
  GradedAlgebra algebra;
  GammaDerivation boundary;  // degree -1

  std::size_t max_generator_degree() const;
  bool has_degree_zero_generators() const;
};

/// Lambda(x_1..x_n, y_1..y_r), x Polynomial of degree 0, y Exterior of
/// degree 1 with boundary f_j. Internal weights: x_i -> 1, y_j -> deg f_j.
FreeDGA koszul_model(const Presentation& p);

FreeDGA make_free_dga(const GroundRing& ring, std::vector<Generator> generators,
                      const std::map<std::string, std::string>& boundaries);

bool check_boundary_square(const FreeDGA& m);

struct TateStage {
  int degree = 0;                      // homology degree that was killed
  std::vector<std::string> adjoined;   // names of the new generators
  std::vector<Element> representatives;
};

struct TateTower {
  FreeDGA model;
  std::vector<TateStage> stages;
};

/// Adjoins generators of degree m+1 killing H_m for 1 <= m < target_degree,
/// one per Smith generator of H_m. Throws UnsupportedV0 when the model has
/// generators of degree 0.
TateTower tate_extend(TateTower tower, int target_degree);

/// Homology of the chain algebra in one degree (V_0 = 0 only).
HomologyGroup model_homology(const FreeDGA& m, int degree);

}  // namespace gammahc
