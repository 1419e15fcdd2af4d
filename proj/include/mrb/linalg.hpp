#ifndef MRB_LINALG_HPP
#define MRB_LINALG_HPP

#include <mrb/defect.hpp>
#include <mrb/matrix.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace mrb {

/// Reduced row-echelon form together with its pivot columns (in row order).
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// Pivot choice: the nonzero entry with the smallest absolute numerator (the
// earliest row on ties). Correctness does not depend on it; it only curbs
// coefficient growth.
inline std::optional<std::size_t> choose_pivot(const Matrix& m, std::size_t col, std::size_t from_row) {
  std::optional<std::size_t> best;
  mpz_class best_num;
  for (std::size_t r = from_row; r < m.rows(); ++r) {
    const auto& x = m(r, col);
    if (is_zero(x)) continue;
    mpz_class num = abs(x.get_num());
    if (!best || num < best_num) {
      best = r;
      best_num = num;
    }
  }
  return best;
}

inline void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace detail

/// Gauss-Jordan elimination restricted to the first `limit_cols` columns
/// (pivots are never taken beyond them; the remaining columns ride along as an
/// augmented block).
inline Echelon row_reduce(Matrix m, std::size_t limit_cols) {
  Echelon e;
  std::size_t row = 0;
  std::vector<std::size_t> support;
  for (std::size_t col = 0; col < limit_cols && row < m.rows(); ++col) {
    auto p = detail::choose_pivot(m, col, row);
    if (!p) continue;
    detail::swap_rows(m, row, *p);
    Rational inv = 1 / m(row, col);
    support.clear();
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (is_zero(m(row, c))) continue;
      m(row, c) *= inv;
      support.push_back(c);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      Rational factor = m(r, col);
      for (auto c : support) m(r, c) -= factor * m(row, c);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

inline Echelon row_reduce(const Matrix& m) { return row_reduce(m, m.cols()); }

inline std::size_t rank(const Matrix& m) {
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return row_reduce(m.transpose()).rank();
  return row_reduce(m).rank();
}

/// Null-space basis in reduced-echelon free-column order: one vector per free
/// column f, with a 1 in position f and minus the pivot-row entries elsewhere.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with m x = b (free variables zero), or nullopt if inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(Errc::DimensionMismatch, "solve: right-hand side length");
  Matrix aug = hstack(m, Matrix::column_vector(b));
  Echelon e = row_reduce(aug, m.cols());
  for (std::size_t r = e.rank(); r < aug.rows(); ++r)
    if (!is_zero(e.reduced(r, m.cols()))) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

/// S with m S = I. Free variables are zeroed in elimination order.
inline Matrix solve_right_inverse(const Matrix& m) {
  Matrix aug = hstack(m, Matrix::identity(m.rows()));
  Echelon e = row_reduce(aug, m.cols());
  if (e.rank() < m.rows()) throw Error(Errc::NotSurjective, "matrix does not have full row rank");
  Matrix s(m.cols(), m.rows());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) s(e.pivots[i], j) = e.reduced(i, m.cols() + j);
  return s;
}

/// L with L m = I for an injective m.
inline Matrix solve_left_inverse(const Matrix& m) { return solve_right_inverse(m.transpose()).transpose(); }

}  // namespace mrb

#endif  // MRB_LINALG_HPP
