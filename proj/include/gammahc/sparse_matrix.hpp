#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "gammahc/ground_ring.hpp"

namespace gammahc {

/// Column-major sparse matrix with exact scalar entries. Stored entries are
/// always nonzero.
class SparseMatrix {
 public:
  using Column = std::map<std::size_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);
  static SparseMatrix from_dense_int(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);

  const Column& column(std::size_t c) const { return data_.at(c); }
  void set_column(std::size_t c, Column col);

  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseMatrix operator+(const SparseMatrix& rhs) const;
  SparseMatrix operator-() const;
  bool operator==(const SparseMatrix& rhs) const;
  bool operator!=(const SparseMatrix& rhs) const { return !(*this == rhs); }

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
  SparseMatrix transpose() const;
  SparseMatrix select_columns(const std::vector<std::size_t>& cols) const;
  std::vector<std::vector<Scalar>> dense() const;

  /// [this | rhs]
  SparseMatrix hstack(const SparseMatrix& rhs) const;

  /// Entries normalized by the ring; zero entries dropped.
  SparseMatrix reduced(const GroundRing& ring) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> data_;
};

}  // namespace gammahc
