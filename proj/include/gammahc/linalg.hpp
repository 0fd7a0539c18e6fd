#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gammahc/ground_ring.hpp"
#include "gammahc/homology_group.hpp"
#include "gammahc/sparse_matrix.hpp"

namespace gammahc {

struct SmithForm {
  SparseMatrix U;
  SparseMatrix S;
  SparseMatrix V;
};

/// Smith normal form over Z: S = U * M * V with U, V unimodular and
/// S = diag(d_1, d_2, ...), d_1 | d_2 | ..., d_i >= 0.
SmithForm snf(const SparseMatrix& m);

/// Homology of C_{n+1} --d_in--> C_n --d_out--> C_{n-1} with free terms over
/// `ring`. Throws CompositionNonzero when d_out * d_in != 0 over the ring.
HomologyGroup homology_at(const SparseMatrix& d_in, const SparseMatrix& d_out,
                          const GroundRing& ring);

/// Some x with M x = b over the ring, or nullopt when b is not in the image.
std::optional<std::vector<Scalar>> preimage(const SparseMatrix& m, const std::vector<Scalar>& b,
                                            const GroundRing& ring);

/// Middle spot of a complex whose terms are finitely presented k-modules
/// k^dim / span(relation columns). Empty relation matrices mean free terms.
struct PresentedSpot {
  SparseMatrix d_in;     // C_{n+1} -> C_n
  SparseMatrix d_out;    // C_n -> C_{n-1}
  SparseMatrix rel_mid;  // columns in C_n
  SparseMatrix rel_out;  // columns in C_{n-1}
};

/// Builds a spot with free terms from the two differentials.
PresentedSpot free_spot(const SparseMatrix& d_in, const SparseMatrix& d_out);

HomologyGroup presented_homology(const PresentedSpot& spot, const GroundRing& ring);

/// Layers of the increasing filtration F_c = span{basis vectors with label
/// <= c} on the homology at the spot: result[c] = F_c H / F_{c'} H where c'
/// is the previous label present. Labels absent from the spot are omitted.
std::map<int, HomologyGroup> filtered_homology(const PresentedSpot& spot,
                                               const std::vector<int>& labels,
                                               const GroundRing& ring);

/// Generators of the homology at a free spot with cycle representatives, in
/// Smith order. `orders[i]` is the additive order of generator i (0 for an
/// element generating a copy of k).
struct HomologyBasis {
  HomologyGroup group;
  std::vector<std::vector<Scalar>> representatives;
  std::vector<Integer> orders;
};

HomologyBasis homology_generators(const SparseMatrix& d_in, const SparseMatrix& d_out,
                                  const GroundRing& ring);

/// Columns spanning the cycles {x : d_out x in span(rel_out)}: a lattice
/// basis over Z and Z/m (there containing m Z^n), a vector space basis over Q.
SparseMatrix cycle_basis(const SparseMatrix& d_out, const SparseMatrix& rel_out, const GroundRing& ring);

/// Rank of the image over a field, or of the image lattice over Z. Over Z/m
/// this is the number of nonzero Smith entries of a lift, mainly diagnostic.
std::size_t matrix_rank(const SparseMatrix& m, const GroundRing& ring);

}  // namespace gammahc
