#include "gammahc/homology_group.hpp"

#include <algorithm>
#include <sstream>

#include "gammahc/error.hpp"

namespace gammahc {

std::vector<Integer> invariant_chain(std::vector<Integer> torsion) {
  for (auto& t : torsion) t = abs(t);
  torsion.erase(std::remove_if(torsion.begin(), torsion.end(),
                               [](const Integer& t) { return t <= 1; }),
                torsion.end());
  std::sort(torsion.begin(), torsion.end());
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    for (std::size_t j = i + 1; j < torsion.size(); ++j) {
      Integer g;
      Integer l;
      mpz_gcd(g.get_mpz_t(), torsion[i].get_mpz_t(), torsion[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), torsion[i].get_mpz_t(), torsion[j].get_mpz_t());
      torsion[i] = g;
      torsion[j] = l;
    }
  }
  torsion.erase(std::remove_if(torsion.begin(), torsion.end(),
                               [](const Integer& t) { return t <= 1; }),
                torsion.end());
  return torsion;
}

HomologyGroup normalize_group(std::size_t extra_free, std::vector<Integer> entries,
                              const GroundRing& ring) {
  HomologyGroup g;
  g.free_rank = extra_free;
  std::vector<Integer> torsion;
  for (auto& e : entries) {
    if (e == 0) {
      ++g.free_rank;
    } else {
      torsion.push_back(abs(e));
    }
  }
  if (ring.is_rationals()) {
    return g;
  }
  torsion = invariant_chain(std::move(torsion));
  if (ring.is_modular()) {
    if (g.free_rank != 0) {
      throw Error("InternalError", "Z/m module with a free abelian summand");
    }
    for (const auto& t : torsion) {
      if (t == ring.modulus()) {
        ++g.free_rank;
      } else {
        if (ring.modulus() % t != 0) {
          throw Error("InternalError", "torsion " + t.get_str() + " does not divide the modulus");
        }
        g.invariant_factors.push_back(t);
      }
    }
    return g;
  }
  g.invariant_factors = std::move(torsion);
  return g;
}

HomologyGroup direct_sum(const std::vector<HomologyGroup>& parts, const GroundRing& ring) {
  std::size_t free = 0;
  std::vector<Integer> torsion;
  for (const auto& p : parts) {
    free += p.free_rank;
    torsion.insert(torsion.end(), p.invariant_factors.begin(), p.invariant_factors.end());
  }
  if (ring.is_modular()) {
    for (std::size_t i = 0; i < free; ++i) torsion.push_back(ring.modulus());
    return normalize_group(0, std::move(torsion), ring);
  }
  return normalize_group(free, std::move(torsion), ring);
}

bool sizes_match(const HomologyGroup& total, const std::vector<HomologyGroup>& layers,
                 const GroundRing& ring) {
  std::size_t free = 0;
  Integer order = 1;
  for (const auto& l : layers) {
    free += l.free_rank;
    for (const auto& d : l.invariant_factors) order *= d;
  }
  Integer total_order = 1;
  for (const auto& d : total.invariant_factors) total_order *= d;
  if (ring.is_modular()) {
    // free summands are finite here, so compare group orders
    Integer lhs = total_order;
    Integer rhs = order;
    for (std::size_t i = 0; i < total.free_rank; ++i) lhs *= ring.modulus();
    for (std::size_t i = 0; i < free; ++i) rhs *= ring.modulus();
    return lhs == rhs;
  }
  return free == total.free_rank && order == total_order;
}

std::string HomologyGroup::to_string(const GroundRing& ring) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const std::string k = ring.to_string();
  bool first = true;
  if (free_rank > 0) {
    os << (k.find('/') != std::string::npos ? "(" + k + ")" : k);
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

}  // namespace gammahc
