#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gammahc/ground_ring.hpp"
#include "gammahc/homology_group.hpp"
#include "gammahc/linalg.hpp"
#include "gammahc/sparse_matrix.hpp"

namespace gammahc {

using Bidegree = std::pair<int, int>;  // (p, q), total degree p + q

/// Bigraded k-modules M_{p,q} (p, q >= 0, p + q <= top_degree) with
/// boundaries D: (p,q) -> (p,q-1), d: (p,q) -> (p-1,q) and
/// B: (p,q) -> (p,q+1). A slice is k^dim modulo the span of its relation
/// columns (empty for free slices). Maps are keyed by their source slice;
/// missing maps are zero.
class DoubleMixedComplex {
 public:
  DoubleMixedComplex(GroundRing ring, int top_degree) : ring_(std::move(ring)), top_(top_degree) {}

  const GroundRing& ring() const { return ring_; }
  int top_degree() const { return top_; }

  void set_slice(Bidegree s, std::size_t dim, std::optional<SparseMatrix> relations = std::nullopt);
  std::size_t dim(Bidegree s) const;
  /// Relation columns of the slice (dim x 0 when free).
  SparseMatrix relations(Bidegree s) const;
  bool is_free(Bidegree s) const;

  void set_D(Bidegree source, SparseMatrix m);
  void set_partial(Bidegree source, SparseMatrix m);
  void set_B(Bidegree source, SparseMatrix m);
  SparseMatrix D(Bidegree source) const;
  SparseMatrix partial(Bidegree source) const;
  SparseMatrix B(Bidegree source) const;
  bool has_D() const { return !D_.empty(); }

  std::vector<Bidegree> slices_of_total(int n) const;

  /// Optional basis labels used by reports.
  std::map<Bidegree, std::vector<std::string>> labels;

 private:
  SparseMatrix lookup(const std::map<Bidegree, SparseMatrix>& maps, Bidegree source, Bidegree target) const;

  GroundRing ring_;
  int top_;
  std::map<Bidegree, std::size_t> dims_;
  std::map<Bidegree, SparseMatrix> rels_;
  std::map<Bidegree, SparseMatrix> D_;
  std::map<Bidegree, SparseMatrix> partial_;
  std::map<Bidegree, SparseMatrix> B_;
};

struct ValidationReport {
  bool ok = true;
  std::string failure;  // first failing identity and slice
  std::size_t checks = 0;
};

/// Checks D^2, B^2, d^2, Dd + dD, Bd + dB, DB + BD on the window interior
/// (compositions are compared modulo target relations).
ValidationReport validate(const DoubleMixedComplex& m);

/// Filtered homology: totals per degree and layers HH_n^l = E^inf_{n-l,l}.
struct FilteredGroups {
  std::vector<HomologyGroup> total;
  std::vector<std::map<int, HomologyGroup>> layers;  // layers[n][l]
};

enum class TotalMode { Hochschild, Cyclic };

/// One degree of a totalization: the presented spot and the column of each
/// basis vector.
struct TotalSpot {
  PresentedSpot spot;
  std::vector<int> columns;
};

TotalSpot total_spot(const DoubleMixedComplex& m, int n, TotalMode mode);

/// HH_n for 0 <= n <= n_max; throws WindowTooSmall when n_max + 1 exceeds
/// the top degree of the complex.
std::vector<HomologyGroup> hochschild_total(const DoubleMixedComplex& m, int n_max);
std::vector<HomologyGroup> cyclic_total(const DoubleMixedComplex& m, int n_max);

/// The double mixed complex (E^1, 0, d, B) with E^1_{p,q} = H_q(M_{p,*}, D).
/// Returns the complex itself when D = 0.
DoubleMixedComplex e1_term(const DoubleMixedComplex& m);

FilteredGroups filtration_layers(const DoubleMixedComplex& m, int n_max, TotalMode mode);

}  // namespace gammahc
