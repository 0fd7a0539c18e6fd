#include "gammahc/sparse_matrix.hpp"

#include "gammahc/error.hpp"

namespace gammahc {

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense_int(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Scalar>> q;
  q.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Scalar> qr;
    qr.reserve(row.size());
    for (long v : row) qr.emplace_back(v);
    q.push_back(std::move(qr));
  }
  return from_dense(q);
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  const auto& col = data_.at(c);
  auto it = col.find(r);
  return it == col.end() ? Scalar(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  auto& col = data_[c];
  if (v == 0) {
    col.erase(r);
  } else {
    col[r] = v;
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (v == 0) return;
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  auto& col = data_[c];
  auto [it, inserted] = col.emplace(r, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) col.erase(it);
  }
}

void SparseMatrix::set_column(std::size_t c, Column col) {
  for (auto it = col.begin(); it != col.end();) {
    if (it->first >= rows_) throw DimensionMismatch("column entry out of range");
    if (it->second == 0) {
      it = col.erase(it);
    } else {
      ++it;
    }
  }
  data_.at(c) = std::move(col);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : data_) n += col.size();
  return n;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("product of incompatible matrices");
  SparseMatrix out(rows_, rhs.cols_);
  for (std::size_t j = 0; j < rhs.cols_; ++j) {
    Column acc;
    for (const auto& [k, b] : rhs.data_[j]) {
      for (const auto& [i, a] : data_[k]) acc[i] += a * b;
    }
    out.set_column(j, std::move(acc));
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("sum of incompatible matrices");
  SparseMatrix out = *this;
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : rhs.data_[j]) out.add(i, j, v);
  }
  return out;
}

SparseMatrix SparseMatrix::operator-() const {
  SparseMatrix out = *this;
  for (auto& col : out.data_) {
    for (auto& [i, v] : col) v = -v;
  }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::vector<Scalar> SparseMatrix::apply(const std::vector<Scalar>& x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length does not match columns");
  std::vector<Scalar> y(rows_, Scalar(0));
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j] == 0) continue;
    for (const auto& [i, a] : data_[j]) y[i] += a * x[j];
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : data_[j]) t.data_[i][j] = v;
  }
  return t;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  SparseMatrix out(rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) out.data_[k] = data_.at(cols[k]);
  return out;
}

std::vector<std::vector<Scalar>> SparseMatrix::dense() const {
  std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols_, Scalar(0)));
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& [i, v] : data_[j]) d[i][j] = v;
  }
  return d;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw DimensionMismatch("hstack of matrices with different row counts");
  SparseMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.data_[j] = data_[j];
  for (std::size_t j = 0; j < rhs.cols_; ++j) out.data_[cols_ + j] = rhs.data_[j];
  return out;
}

SparseMatrix SparseMatrix::reduced(const GroundRing& ring) const {
  SparseMatrix out(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    Column col;
    for (const auto& [i, v] : data_[j]) {
      Scalar r = ring.normalize(v);
      if (r != 0) col.emplace(i, std::move(r));
    }
    out.data_[j] = std::move(col);
  }
  return out;
}

}  // namespace gammahc
