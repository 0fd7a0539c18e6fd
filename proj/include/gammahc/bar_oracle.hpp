#pragma once

#include <string>
#include <vector>

#include "gammahc/ground_ring.hpp"
#include "gammahc/homology_group.hpp"
#include "gammahc/mixed_complex.hpp"
#include "gammahc/model.hpp"

namespace gammahc {

/// Commutative k-algebra, free of finite rank, given by structure constants.
class FiniteAlgebra {
 public:
  /// table[i][j] holds the coordinates of e_i * e_j. Checks shape, unit,
  /// commutativity and associativity (throws NotAssociative / DimensionMismatch).
  FiniteAlgebra(GroundRing ring, std::vector<std::string> labels, std::size_t unit,
                std::vector<std::vector<std::vector<Scalar>>> table);

  /// Basis {x^a : a_i < m_i}; throws NotQuasiMonic, and NotFlat when a
  /// constant relation makes A a non-free k-module.
  static FiniteAlgebra from_presentation(const Presentation& p);

  const GroundRing& ring() const { return ring_; }
  std::size_t rank() const { return labels_.size(); }
  std::size_t unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Scalar>& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  /// Basis indices other than the unit: a basis of A/k.
  std::vector<std::size_t> reduced_basis() const;

  /// Same algebra with basis vector i moved to position perm[i].
  FiniteAlgebra permuted(const std::vector<std::size_t>& perm) const;

 private:
  GroundRing ring_;
  std::vector<std::string> labels_;
  std::size_t unit_;
  std::vector<std::vector<std::vector<Scalar>>> table_;
};

/// Normalized cyclic complex A (x) (A/k)^{(x) q} placed in column p = 0 with
/// D = b and B the Connes operator, for q <= n_max + 1.
DoubleMixedComplex cyclic_mixed(const FiniteAlgebra& a, int n_max);

std::vector<HomologyGroup> hh_oracle(const FiniteAlgebra& a, int n_max);
std::vector<HomologyGroup> hc_oracle(const FiniteAlgebra& a, int n_max);

}  // namespace gammahc
