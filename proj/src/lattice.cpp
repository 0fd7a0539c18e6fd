#include "lattice.hpp"

#include <algorithm>
#include <utility>

#include "gammahc/error.hpp"

namespace gammahc::detail {

namespace {

IntMat identity(std::size_t n) {
  IntMat m(n, IntVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// a -= q * b
void axpy(IntVec& a, const Integer& q, const IntVec& b) {
  if (q == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) a[i] -= q * b[i];
  }
}

Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// q with |a - q b| <= |b| / 2
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

void sub_row(IntMat& m, std::size_t dst, std::size_t src, const Integer& q) {
  axpy(m[dst], q, m[src]);
}

void sub_col(IntMat& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (auto& row : m) {
    if (row[src] != 0) row[dst] -= q * row[src];
  }
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void negate_col(IntMat& m, std::size_t c) {
  for (auto& row : m) row[c] = -row[c];
}

}  // namespace

IntMat to_int_rows(const SparseMatrix& m) {
  IntMat out(m.rows(), IntVec(m.cols(), Integer(0)));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      if (v.get_den() != 1) throw NotInteger("matrix entry " + v.get_str() + " is not an integer");
      out[i][j] = v.get_num();
    }
  }
  return out;
}

SparseMatrix from_int_rows(const IntMat& m, std::size_t cols) {
  SparseMatrix out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] != 0) out.set(i, j, Scalar(m[i][j]));
    }
  }
  return out;
}

DenseSmith smith(IntMat m, std::size_t cols, bool track) {
  const std::size_t rows = m.size();
  DenseSmith out;
  if (track) {
    out.U = identity(rows);
    out.U_inv = identity(rows);
    out.V = identity(cols);
  }

  auto row_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    sub_row(m, dst, src, q);
    if (track) {
      sub_row(out.U, dst, src, q);
      sub_col(out.U_inv, src, dst, -q);
    }
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(m[a], m[b]);
    if (track) {
      std::swap(out.U[a], out.U[b]);
      swap_cols(out.U_inv, a, b);
    }
  };
  auto row_negate = [&](std::size_t r) {
    for (auto& v : m[r]) v = -v;
    if (track) {
      for (auto& v : out.U[r]) v = -v;
      negate_col(out.U_inv, r);
    }
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    sub_col(m, dst, src, q);
    if (track) sub_col(out.V, dst, src, q);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    swap_cols(m, a, b);
    if (track) swap_cols(out.V, a, b);
  };

  // pivot search over the trailing block; returns false when it is zero
  auto smallest = [&](std::size_t t, std::size_t& pr, std::size_t& pc) {
    pr = rows;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        if (pr == rows || abs(m[i][j]) < abs(m[pr][pc])) {
          pr = i;
          pc = j;
          if (abs(m[i][j]) == 1) return true;
        }
      }
    }
    return pr != rows;
  };

  const std::size_t diag = std::min(rows, cols);
  std::size_t t = 0;
  for (; t < diag; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!smallest(t, pr, pc)) break;
    // each round strictly lowers |pivot|, so the loop terminates
    for (;;) {
      row_swap(t, pr);
      col_swap(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        row_sub(i, t, nearest_quotient(m[i][t], m[t][t]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        col_sub(j, t, nearest_quotient(m[t][j], m[t][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (clean) {
        // the pivot must divide the whole trailing block
        for (std::size_t i = t + 1; i < rows && clean; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (m[i][j] != 0 && !mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
              row_sub(t, i, Integer(-1));
              col_sub(j, t, nearest_quotient(m[t][j], m[t][t]));
              clean = false;
              break;
            }
          }
        }
        if (clean) break;
      }
      // next pivot: smallest nonzero entry left in row t or column t
      pr = t;
      pc = t;
      Integer best = 0;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] != 0 && (best == 0 || abs(m[i][t]) < best)) {
          best = abs(m[i][t]);
          pr = i;
          pc = t;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] != 0 && (best == 0 || abs(m[t][j]) < best)) {
          best = abs(m[t][j]);
          pr = t;
          pc = j;
        }
      }
    }
    if (m[t][t] < 0) row_negate(t);
  }
  out.rank = t;
  out.S = std::move(m);
  return out;
}

std::optional<IntVec> Lattice::coordinates(IntVec v) const {
  IntVec coords(basis.size(), Integer(0));
  std::size_t next_row = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::size_t r = pivot_rows[i];
    for (; next_row < r; ++next_row) {
      if (v[next_row] != 0) return std::nullopt;
    }
    if (v[r] != 0) {
      if (!mpz_divisible_p(v[r].get_mpz_t(), basis[i][r].get_mpz_t())) return std::nullopt;
      Integer q;
      mpz_divexact(q.get_mpz_t(), v[r].get_mpz_t(), basis[i][r].get_mpz_t());
      axpy(v, q, basis[i]);
      coords[i] = q;
    }
    next_row = r + 1;
  }
  for (; next_row < v.size(); ++next_row) {
    if (v[next_row] != 0) return std::nullopt;
  }
  return coords;
}

EchelonResult echelon(std::vector<IntVec> cols, std::size_t ambient, bool want_kernel) {
  const std::size_t n = cols.size();
  std::vector<IntVec> track;
  if (want_kernel) {
    track.assign(n, IntVec(n, Integer(0)));
    for (std::size_t j = 0; j < n; ++j) track[j][j] = 1;
  }
  auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    axpy(cols[dst], q, cols[src]);
    if (want_kernel) axpy(track[dst], q, track[src]);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(cols[a], cols[b]);
    if (want_kernel) std::swap(track[a], track[b]);
  };

  EchelonResult out;
  out.lattice.ambient = ambient;
  std::size_t k = 0;
  for (std::size_t r = 0; r < ambient && k < n; ++r) {
    while (true) {
      std::size_t best = n;
      std::size_t nonzero = 0;
      for (std::size_t j = k; j < n; ++j) {
        if (cols[j][r] == 0) continue;
        ++nonzero;
        if (best == n || abs(cols[j][r]) < abs(cols[best][r])) best = j;
      }
      if (best == n) break;
      if (nonzero == 1) {
        col_swap(k, best);
        if (cols[k][r] < 0) {
          for (auto& v : cols[k]) v = -v;
          if (want_kernel) {
            for (auto& v : track[k]) v = -v;
          }
        }
        out.lattice.pivot_rows.push_back(r);
        ++k;
        break;
      }
      for (std::size_t j = k; j < n; ++j) {
        if (j == best || cols[j][r] == 0) continue;
        col_sub(j, best, tdiv(cols[j][r], cols[best][r]));
      }
    }
  }
  out.lattice.basis.assign(std::make_move_iterator(cols.begin()),
                           std::make_move_iterator(cols.begin() + static_cast<std::ptrdiff_t>(k)));
  if (want_kernel) {
    out.kernel.assign(std::make_move_iterator(track.begin() + static_cast<std::ptrdiff_t>(k)),
                      std::make_move_iterator(track.end()));
  }
  return out;
}

Lattice preimage_lattice(const std::vector<IntVec>& m_cols, const std::vector<IntVec>& r_cols,
                         std::size_t target_dim) {
  const std::size_t n = m_cols.size();
  std::vector<IntVec> gens = m_cols;
  gens.insert(gens.end(), r_cols.begin(), r_cols.end());
  auto ech = echelon(std::move(gens), target_dim, true);
  std::vector<IntVec> projected;
  projected.reserve(ech.kernel.size());
  for (auto& k : ech.kernel) {
    IntVec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(n));
    if (std::any_of(x.begin(), x.end(), [](const Integer& v) { return v != 0; })) {
      projected.push_back(std::move(x));
    }
  }
  return echelon(std::move(projected), n, false).lattice;
}

IntVec quotient_diagonal(const Lattice& g1, const std::vector<IntVec>& sub_generators) {
  const std::size_t r = g1.rank();
  IntMat c(r, IntVec(sub_generators.size(), Integer(0)));
  for (std::size_t j = 0; j < sub_generators.size(); ++j) {
    auto coords = g1.coordinates(sub_generators[j]);
    if (!coords) {
      throw CompositionNonzero("boundary generator " + std::to_string(j) +
                               " is not a cycle (composite map is nonzero)");
    }
    for (std::size_t i = 0; i < r; ++i) c[i][j] = (*coords)[i];
  }
  IntVec diag(r, Integer(0));
  if (r == 0) return diag;
  auto s = smith(std::move(c), sub_generators.size(), false);
  for (std::size_t i = 0; i < s.rank; ++i) diag[i] = s.S[i][i];
  return diag;
}

}  // namespace gammahc::detail
