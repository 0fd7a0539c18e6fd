#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gammahc/ground_ring.hpp"

namespace gammahc {

/// Isomorphism class of a finitely generated k-module: k^free_rank plus the
/// cyclic summands k/d_i with d_1 | d_2 | ... (units excluded). Over Z/m a
/// summand isomorphic to k itself counts towards free_rank, so over a field
/// invariant_factors is always empty.
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
  std::string to_string(const GroundRing& ring) const;

  bool operator==(const HomologyGroup& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
  bool operator!=(const HomologyGroup& o) const { return !(*this == o); }
};

/// Turns the diagonal of a diagonalized presentation Z^n / diag(entries) of an
/// abelian group into the canonical k-module description. `entries` may
/// contain 0 (a free summand), units, and non-divisible values in any order;
/// `extra_free` adds further free summands. Over Z/m the group must be
/// m-torsion.
HomologyGroup normalize_group(std::size_t extra_free, std::vector<Integer> entries,
                              const GroundRing& ring);

HomologyGroup direct_sum(const std::vector<HomologyGroup>& parts, const GroundRing& ring);

/// Gcd/lcm normal form: returns d_1 | d_2 | ... with units removed.
std::vector<Integer> invariant_chain(std::vector<Integer> torsion);

/// True when the layers have the size of `total`: equal free rank and equal
/// torsion order (the graded pieces of a finite filtration of `total`).
bool sizes_match(const HomologyGroup& total, const std::vector<HomologyGroup>& layers,
                 const GroundRing& ring);

}  // namespace gammahc
