#ifndef MRB_LEIBNIZ_HPP
#define MRB_LEIBNIZ_HPP

#include <mrb/algebra.hpp>
#include <mrb/defect.hpp>
#include <mrb/linalg.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mrb {

/// Residual [x,[y,z]] - [[x,y],z] - [y,[x,z]] on every basis triple.
inline DefectReport leibniz_defect(const LeibnizAlgebra& a) {
  DefectReport report;
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vector r = a.bracket(unit_vector(d, i), a.bracket(j, k));
        r = r - a.bracket(a.bracket(i, j), unit_vector(d, k));
        r = r - a.bracket(unit_vector(d, j), a.bracket(i, k));
        report.add("leibniz", {i + 1, j + 1, k + 1}, r);
      }
  return report;
}

namespace detail {

// [K e_i, K e_j] - K([K e_i, e_j] + [e_i, K e_j]) - weight [e_i, e_j]
inline Vector mrb_residual(const LeibnizAlgebra& a, const Matrix& k, const Rational& weight, std::size_t i,
                           std::size_t j) {
  const std::size_t d = a.dim();
  Vector ki = k.column(i), kj = k.column(j);
  Vector ei = unit_vector(d, i), ej = unit_vector(d, j);
  Vector r = a.bracket(ki, kj) - k.apply(a.bracket(ki, ej) + a.bracket(ei, kj));
  axpy(r, -weight, a.bracket(i, j));
  return r;
}

// [T e_i, T e_j] - T([T e_i, e_j] + [e_i, T e_j] + weight [e_i, e_j])
inline Vector rb_residual(const LeibnizAlgebra& a, const Matrix& t, const Rational& weight, std::size_t i,
                          std::size_t j) {
  const std::size_t d = a.dim();
  Vector ti = t.column(i), tj = t.column(j);
  Vector ei = unit_vector(d, i), ej = unit_vector(d, j);
  Vector inner = a.bracket(ti, ej) + a.bracket(ei, tj);
  axpy(inner, weight, a.bracket(i, j));
  return a.bracket(ti, tj) - t.apply(inner);
}

}  // namespace detail

/// Residuals of the modified Rota-Baxter identity
/// [Kx, Ky] = K([Kx, y] + [x, Ky]) + weight [x, y] on basis pairs.
inline DefectReport mrb_defect(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  check_operator_shape(a, ctx);
  DefectReport report;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      report.add("modified-rota-baxter", {i + 1, j + 1}, detail::mrb_residual(a, ctx.op, ctx.weight, i, j));
  return report;
}

/// Residuals of the Rota-Baxter identity
/// [Tx, Ty] = T([Tx, y] + [x, Ty] + weight [x, y]) on basis pairs.
inline DefectReport rb_defect(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  check_operator_shape(a, ctx);
  DefectReport report;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      report.add("rota-baxter", {i + 1, j + 1}, detail::rb_residual(a, ctx.op, ctx.weight, i, j));
  return report;
}

inline bool is_mrb_operator(const LeibnizAlgebra& a, const Matrix& k, const Rational& weight) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!is_zero(detail::mrb_residual(a, k, weight, i, j))) return false;
  return true;
}

inline bool is_rb_operator(const LeibnizAlgebra& a, const Matrix& t, const Rational& weight) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!is_zero(detail::rb_residual(a, t, weight, i, j))) return false;
  return true;
}

inline void require_leibniz(const LeibnizAlgebra& a) {
  if (auto r = leibniz_defect(a); !r.empty()) throw Error(Errc::NotLeibniz, "Leibniz identity fails", r);
}

inline void require_mrb(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  if (auto r = mrb_defect(a, ctx); !r.empty())
    throw Error(Errc::NotModifiedRotaBaxter, "operator is not modified Rota-Baxter of weight " + to_string(ctx.weight), r);
}

/// T (weight w) -> K = 2T + w I (weight -w^2).
inline OperatorContext rb_to_mrb(const LeibnizAlgebra& a, const OperatorContext& rb) {
  if (auto r = rb_defect(a, rb); !r.empty())
    throw Error(Errc::NotRotaBaxter, "operator is not Rota-Baxter of weight " + to_string(rb.weight), r);
  OperatorContext out{Rational(2) * rb.op + rb.weight * Matrix::identity(a.dim()), -rb.weight * rb.weight};
  ensure(mrb_defect(a, out).empty(), "rb_to_mrb yields a modified Rota-Baxter operator");
  return out;
}

/// Inverse direction: given K of weight -w^2 and the chosen square root w,
/// T = (K - w I) / 2 is Rota-Baxter of weight w.
inline OperatorContext mrb_to_rb(const LeibnizAlgebra& a, const OperatorContext& mrb, const Rational& root) {
  if (mrb.weight != -root * root)
    throw Error(Errc::DimensionMismatch, "weight " + to_string(mrb.weight) + " is not -(" + to_string(root) + ")^2");
  require_mrb(a, mrb);
  OperatorContext out{Rational(1, 2) * (mrb.op - root * Matrix::identity(a.dim())), root};
  ensure(rb_defect(a, out).empty(), "mrb_to_rb yields a Rota-Baxter operator");
  return out;
}

/// The derived algebra g_K with bracket [x, y]_K = [Kx, y] + [x, Ky].
inline LeibnizAlgebra derived_algebra(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  require_mrb(a, ctx);
  require_leibniz(a);
  const std::size_t d = a.dim();
  auto out = LeibnizAlgebra::from_products(d, [&](std::size_t i, std::size_t j) {
    return a.bracket(ctx.op.column(i), unit_vector(d, j)) + a.bracket(unit_vector(d, i), ctx.op.column(j));
  });
  ensure(leibniz_defect(out).empty(), "derived bracket satisfies the Leibniz identity");
  ensure(mrb_defect(out, ctx).empty(), "K stays modified Rota-Baxter on the derived algebra");
  return out;
}

/// Checks that phi: A1 -> A2 preserves brackets ("bracket" section, basis
/// pairs) and intertwines the operators ("operator" section, basis vectors).
inline DefectReport morphism_defect(const LeibnizAlgebra& a1, const OperatorContext& ctx1, const LeibnizAlgebra& a2,
                                    const OperatorContext& ctx2, const Matrix& phi) {
  check_operator_shape(a1, ctx1);
  check_operator_shape(a2, ctx2);
  if (phi.rows() != a2.dim() || phi.cols() != a1.dim())
    throw Error(Errc::DimensionMismatch, "morphism matrix must be " + std::to_string(a2.dim()) + "x" +
                                             std::to_string(a1.dim()));
  DefectReport report;
  for (std::size_t i = 0; i < a1.dim(); ++i)
    for (std::size_t j = 0; j < a1.dim(); ++j)
      report.add("bracket", {i + 1, j + 1}, phi.apply(a1.bracket(i, j)) - a2.bracket(phi.column(i), phi.column(j)));
  Matrix diff = phi * ctx1.op - ctx2.op * phi;
  for (std::size_t i = 0; i < a1.dim(); ++i) report.add("operator", {i + 1}, diff.column(i));
  return report;
}

/// Fixed entries of a candidate operator; nullopt marks a free entry.
struct OperatorMask {
  std::size_t dim = 0;
  std::vector<std::optional<Rational>> entries;  // row-major, dim * dim

  static OperatorMask all_free(std::size_t dim) { return {dim, std::vector<std::optional<Rational>>(dim * dim)}; }
};

inline constexpr std::size_t kDefaultSearchBudget = 10'000'000;

/// Enumerates every dim x dim matrix whose free entries range over `grid`
/// (row-major, leftmost entry most significant, grid values in given order)
/// and returns those accepted by `accept`.
template <class Predicate>
std::vector<Matrix> enumerate_grid_matrices(std::size_t dim, const std::vector<Rational>& grid,
                                            const std::optional<OperatorMask>& mask, std::size_t budget,
                                            Predicate&& accept) {
  OperatorMask m = mask ? *mask : OperatorMask::all_free(dim);
  if (m.dim != dim || m.entries.size() != dim * dim)
    throw Error(Errc::DimensionMismatch, "mask shape does not match operator shape");
  std::vector<std::size_t> free;
  for (std::size_t e = 0; e < m.entries.size(); ++e)
    if (!m.entries[e]) free.push_back(e);
  std::size_t candidates = 1;
  for (std::size_t n = 0; n < free.size(); ++n) {
    if (grid.empty()) {
      candidates = 0;
      break;
    }
    if (candidates > budget / grid.size())
      throw Error(Errc::BudgetExceeded, "search space exceeds budget of " + std::to_string(budget) + " candidates");
    candidates *= grid.size();
  }
  std::vector<Matrix> found;
  if (candidates == 0) return found;

  Matrix k(dim, dim);
  for (std::size_t e = 0; e < m.entries.size(); ++e)
    if (m.entries[e]) k(e / dim, e % dim) = *m.entries[e];
  std::vector<std::size_t> digit(free.size(), 0);
  for (auto e : free) k(e / dim, e % dim) = grid[0];
  while (true) {
    if (accept(k)) found.push_back(k);
    std::size_t t = free.size();
    while (t-- > 0) {
      auto e = free[t];
      if (++digit[t] < grid.size()) {
        k(e / dim, e % dim) = grid[digit[t]];
        break;
      }
      digit[t] = 0;
      k(e / dim, e % dim) = grid[0];
    }
    if (t == static_cast<std::size_t>(-1)) break;
  }
  return found;
}

/// All grid matrices K with empty mrb_defect at the given weight.
inline std::vector<Matrix> grid_search_operators(const LeibnizAlgebra& a, const Rational& weight,
                                                 const std::vector<Rational>& grid,
                                                 const std::optional<OperatorMask>& mask = std::nullopt,
                                                 std::size_t budget = kDefaultSearchBudget) {
  return enumerate_grid_matrices(a.dim(), grid, mask, budget,
                                 [&](const Matrix& k) { return is_mrb_operator(a, k, weight); });
}

/// All grid matrices T with empty rb_defect at the given weight.
inline std::vector<Matrix> grid_search_rb_operators(const LeibnizAlgebra& a, const Rational& weight,
                                                    const std::vector<Rational>& grid,
                                                    const std::optional<OperatorMask>& mask = std::nullopt,
                                                    std::size_t budget = kDefaultSearchBudget) {
  return enumerate_grid_matrices(a.dim(), grid, mask, budget,
                                 [&](const Matrix& t) { return is_rb_operator(a, t, weight); });
}

}  // namespace mrb

#endif  // MRB_LEIBNIZ_HPP
