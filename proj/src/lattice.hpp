#pragma once

// Dense integer kernels behind the public linear-algebra surface: Smith form
// with transforms, column echelon bases of lattices, kernels and
// coordinates. Matrices are small blocks here; callers split large sparse
// problems into connected components first.

#include <cstddef>
#include <optional>
#include <vector>

#include "gammahc/ground_ring.hpp"
#include "gammahc/sparse_matrix.hpp"

namespace gammahc::detail {

using IntVec = std::vector<Integer>;
/// Row-major dense integer matrix.
using IntMat = std::vector<IntVec>;

IntMat to_int_rows(const SparseMatrix& m);
SparseMatrix from_int_rows(const IntMat& m, std::size_t cols);

struct DenseSmith {
  IntMat S;
  IntMat U;
  IntMat U_inv;
  IntMat V;
  std::size_t rank = 0;
};

/// S = U * M * V with S diagonal, d_1 | d_2 | ..., d_i >= 0.
DenseSmith smith(IntMat m, std::size_t cols, bool track);

/// Lattice given by a column echelon basis: basis[i] has its first nonzero
/// entry (positive) at pivot_rows[i], and pivot rows strictly increase.
struct Lattice {
  std::size_t ambient = 0;
  std::vector<IntVec> basis;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return basis.size(); }
  /// Integer coordinates of v in the basis, or nullopt when v is outside.
  std::optional<IntVec> coordinates(IntVec v) const;
};

struct EchelonResult {
  Lattice lattice;
  /// Basis of the relation module of the generators (only when requested).
  std::vector<IntVec> kernel;
};

/// Column echelon form of the lattice spanned by `generators` (vectors of
/// length `ambient`). With want_kernel, also returns a basis of the integer
/// relations among the generators.
EchelonResult echelon(std::vector<IntVec> generators, std::size_t ambient, bool want_kernel);

/// Basis of {x in Z^n : M x in span_Z(R)}, M and R given column-wise over the
/// same target of dimension `target_dim`.
Lattice preimage_lattice(const std::vector<IntVec>& m_cols, const std::vector<IntVec>& r_cols,
                         std::size_t target_dim);

/// Invariants of G1 / G0 where G0 is spanned by `sub_generators` and is
/// contained in the lattice `g1`. Returns the Smith diagonal padded with
/// zeros up to rank(g1); throws CompositionNonzero when a generator is
/// outside g1.
IntVec quotient_diagonal(const Lattice& g1, const std::vector<IntVec>& sub_generators);

}  // namespace gammahc::detail
