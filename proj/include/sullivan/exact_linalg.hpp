#pragma once

#include "sullivan/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sullivan::linalg {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
public:
  using Scalar = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(std::span<const std::vector<T>> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("row length mismatch");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static Matrix from_columns(std::span<const std::vector<T>> columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw Error("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw Error("matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (v[j] != 0 && (*this)(i, j) != 0) acc += (*this)(i, j) * v[j];
      }
      out[i] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

struct RrefResult {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row i
  std::size_t rank = 0;
};

/// Gauss-Jordan elimination. Pivot = first nonzero entry in the column at or
/// below the current row; elimination only touches nonzero entries.
inline RrefResult rref(RationalMatrix m) {
  RrefResult out;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);

    const Rational inv = 1 / m(r, c);
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (m(r, j) != 0) {
        m(r, j) *= inv;
        support.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

/// Basis of the null space, one vector per free column (in column order) with
/// that free variable set to 1 and the other free variables set to 0.
inline std::vector<Vector> kernel_basis(const RationalMatrix& m) {
  const auto [reduced, pivots, rk] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < rk; ++i) {
      if (reduced(i, f) != 0) v[pivots[i]] = -reduced(i, f);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical solution of m·x = b (free variables zero), or nullopt when the
/// system is inconsistent.
inline std::optional<Vector> solve(const RationalMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error("solve: right-hand side has wrong length");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto [reduced, pivots, rk] = rref(std::move(aug));
  if (rk > 0 && pivots[rk - 1] == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < rk; ++i) x[pivots[i]] = reduced(i, m.cols());
  return x;
}

/// Incrementally grown row space in echelon form. Rows are stored sparsely and
/// each stored row vanishes at the pivots of all earlier rows, so a single pass
/// in insertion order fully reduces a candidate vector.
class RowSpace {
public:
  explicit RowSpace(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  // Residual of v after reduction; zero iff v lies in the span.
  Vector reduce(Vector v) const {
    check_length(v);
    for (const auto& row : rows_) {
      const Rational& lead = v[row.pivot];
      if (lead == 0) continue;
      const Rational f = lead;
      for (const auto& [j, value] : row.entries) v[j] -= f * value;
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  // Adds v; returns false (and leaves the space unchanged) if v is dependent.
  bool insert(const Vector& v) {
    Vector residual = reduce(v);
    std::size_t pivot = 0;
    while (pivot < dimension_ && residual[pivot] == 0) ++pivot;
    if (pivot == dimension_) return false;
    const Rational inv = 1 / residual[pivot];
    SparseRow row{pivot, {}};
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (residual[j] != 0) row.entries.emplace_back(j, residual[j] * inv);
    }
    rows_.push_back(std::move(row));
    return true;
  }

  static bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
  }

private:
  struct SparseRow {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Rational>> entries;
  };

  void check_length(const Vector& v) const {
    if (v.size() != dimension_) throw Error("RowSpace: vector has wrong length");
  }

  std::size_t dimension_;
  std::vector<SparseRow> rows_;
};

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// kernel_basis for a matrix given by sparse columns. Columns that share no
/// row, directly or through other columns, are reduced separately; the
/// result equals kernel_basis of the dense matrix, vector for vector.
inline std::vector<Vector> kernel_basis_sparse(std::span<const SparseColumn> columns, std::size_t rows) {
  const std::size_t n = columns.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t j = 0; j < n; ++j) parent[j] = j;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::optional<std::size_t>> row_owner(rows);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, c] : columns[j]) {
      if (i >= rows) throw Error("sparse column entry outside the row range");
      if (c == 0) continue;
      if (row_owner[i]) parent[find(j)] = find(*row_owner[i]);
      else row_owner[i] = j;
    }
  }

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::optional<std::size_t>> block_of_root(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t root = find(j);
    if (!block_of_root[root]) {
      block_of_root[root] = blocks.size();
      blocks.emplace_back();
    }
    blocks[*block_of_root[root]].push_back(j);
  }

  std::vector<std::pair<std::size_t, Vector>> keyed;
  std::vector<std::size_t> local_row(rows);
  for (const auto& cols : blocks) {
    std::vector<std::size_t> block_rows;
    for (std::size_t j : cols)
      for (const auto& [i, c] : columns[j])
        if (c != 0) block_rows.push_back(i);
    std::sort(block_rows.begin(), block_rows.end());
    block_rows.erase(std::unique(block_rows.begin(), block_rows.end()), block_rows.end());
    for (std::size_t t = 0; t < block_rows.size(); ++t) local_row[block_rows[t]] = t;

    RationalMatrix local(block_rows.size(), cols.size());
    for (std::size_t t = 0; t < cols.size(); ++t)
      for (const auto& [i, c] : columns[cols[t]])
        if (c != 0) local(local_row[i], t) = c;

    for (const auto& v : kernel_basis(local)) {
      Vector g(n);
      std::size_t free_col = 0;
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0) continue;
        g[cols[t]] = v[t];
        free_col = cols[t];  // the free column is the last nonzero entry
      }
      keyed.emplace_back(free_col, std::move(g));
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vector> out;
  out.reserve(keyed.size());
  for (auto& [key, v] : keyed) out.push_back(std::move(v));
  return out;
}

struct QuotientBasis {
  std::size_t dimension = 0;
  // Members of `ambient` that, adjoined to `sub`, give a basis of span(ambient).
  std::vector<Vector> representatives;
  std::vector<std::size_t> representative_indices;
};

/// span(ambient) / span(sub). Throws if some sub vector lies outside the
/// ambient span, which signals an inconsistent complex.
inline QuotientBasis quotient_basis(std::span<const Vector> sub, std::span<const Vector> ambient,
                                    std::size_t length) {
  RowSpace ambient_space(length);
  for (const auto& v : ambient) ambient_space.insert(v);
  for (const auto& v : sub) {
    if (!ambient_space.contains(v)) throw Error("quotient: subspace vector outside the ambient span");
  }

  RowSpace space(length);
  for (const auto& v : sub) space.insert(v);
  QuotientBasis out;
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    if (space.insert(ambient[i])) {
      out.representatives.push_back(ambient[i]);
      out.representative_indices.push_back(i);
    }
  }
  out.dimension = out.representatives.size();
  return out;
}

inline std::size_t quotient_dimension(std::span<const Vector> sub, std::span<const Vector> ambient,
                                      std::size_t length) {
  return quotient_basis(sub, ambient, length).dimension;
}

struct SnfResult {
  std::vector<Integer> diagonal;  // nonzero invariant factors, d_i | d_{i+1}
  std::size_t rank = 0;
  std::optional<IntegerMatrix> left;   // unimodular, rows x rows
  std::optional<IntegerMatrix> right;  // unimodular, cols x cols
};

namespace detail {

struct SnfWork {
  IntegerMatrix a;
  std::optional<IntegerMatrix> left, right;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    if (left) left->swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (right) right->swap_cols(i, j);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) += f * a(src, j);
    if (left)
      for (std::size_t j = 0; j < left->cols(); ++j) (*left)(dst, j) += f * (*left)(src, j);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += f * a(i, src);
    if (right)
      for (std::size_t i = 0; i < right->rows(); ++i) (*right)(i, dst) += f * (*right)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
    if (left)
      for (std::size_t j = 0; j < left->cols(); ++j) (*left)(i, j) = -(*left)(i, j);
  }
};

// Truncating quotient, so that |remainder| < |divisor| after the update.
inline Integer trunc_div(const Integer& n, const Integer& d) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

} // namespace detail

/// Smith normal form by row/column gcd elimination; the pivot at each step is
/// an entry of minimal nonzero absolute value in the remaining block.
inline SnfResult smith_normal_form(IntegerMatrix a, bool with_transforms = false) {
  const std::size_t rows = a.rows(), cols = a.cols();
  detail::SnfWork w{std::move(a), std::nullopt, std::nullopt};
  if (with_transforms) {
    w.left = IntegerMatrix::identity(rows);
    w.right = IntegerMatrix::identity(cols);
  }

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // Minimal nonzero |entry| in the block [t.., t..].
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (w.a(i, j) == 0) continue;
          if (!best || abs(w.a(i, j)) < abs(w.a(best->first, best->second))) best = {i, j};
        }
      if (!best) break;
      w.swap_rows(t, best->first);
      w.swap_cols(t, best->second);

      bool clean = true;
      const Integer pivot = w.a(t, t);
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a(i, t) == 0) continue;
        w.add_row(i, t, -detail::trunc_div(w.a(i, t), pivot));
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a(t, j) == 0) continue;
        w.add_col(j, t, -detail::trunc_div(w.a(t, j), pivot));
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column cleared; enforce divisibility of the rest of the block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (w.a(i, j) % pivot != 0) {
            offending = i;
            break;
          }
        }
      if (!offending) break;
      w.add_row(t, *offending, 1);
    }
    if (w.a(t, t) == 0) break;
    if (w.a(t, t) < 0) w.negate_row(t);
  }

  SnfResult out;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
    if (w.a(i, i) == 0) break;
    out.diagonal.push_back(w.a(i, i));
  }
  out.rank = out.diagonal.size();
  out.left = std::move(w.left);
  out.right = std::move(w.right);
  return out;
}

} // namespace sullivan::linalg
