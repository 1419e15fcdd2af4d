#ifndef MRB_REPRESENTATION_HPP
#define MRB_REPRESENTATION_HPP

#include <mrb/algebra.hpp>
#include <mrb/leibniz.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mrb {

/// (V, rho^L, rho^R, K_V): one dimV x dimV matrix per algebra basis vector for
/// each action, plus an operator on V. For Rota-Baxter representations the
/// `k_v` slot holds T_V. Axioms are checked by the *_defect operations.
struct Representation {
  std::size_t dim_v = 0;
  std::vector<Matrix> rho_l;
  std::vector<Matrix> rho_r;
  Matrix k_v;

  /// rho^L(x) for an arbitrary algebra vector.
  Matrix left(const Vector& x) const { return combine(rho_l, x); }
  Matrix right(const Vector& x) const { return combine(rho_r, x); }

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  Matrix combine(const std::vector<Matrix>& rho, const Vector& x) const {
    Matrix m(dim_v, dim_v);
    for (std::size_t i = 0; i < rho.size(); ++i)
      if (!is_zero(x[i])) m += x[i] * rho[i];
    return m;
  }
};

inline void check_rep_shape(const LeibnizAlgebra& a, const Representation& r) {
  auto bad = [&](const std::string& what) {
    throw Error(Errc::DimensionMismatch, "representation " + what + " (algebra dim " + std::to_string(a.dim()) +
                                             ", dimV " + std::to_string(r.dim_v) + ")");
  };
  if (r.rho_l.size() != a.dim() || r.rho_r.size() != a.dim()) bad("needs one action matrix per basis vector");
  for (const auto& m : r.rho_l)
    if (m.rows() != r.dim_v || m.cols() != r.dim_v) bad("left action matrix has wrong shape");
  for (const auto& m : r.rho_r)
    if (m.rows() != r.dim_v || m.cols() != r.dim_v) bad("right action matrix has wrong shape");
  if (r.k_v.rows() != r.dim_v || r.k_v.cols() != r.dim_v) bad("operator on V has wrong shape");
}

/// Residuals of the three representation axioms on basis pairs (x, y):
///   rho^L([x,y]) = rho^L(x) rho^L(y) - rho^L(y) rho^L(x)
///   rho^R([x,y]) = rho^L(x) rho^R(y) - rho^R(y) rho^L(x)
///   rho^R([x,y]) = rho^L(x) rho^R(y) + rho^R(y) rho^R(x)
/// plus the difference of the last two, rho^R(y)(rho^L(x) + rho^R(x)) = 0,
/// which tells which pair of axioms disagrees.
inline DefectReport rep_defect(const LeibnizAlgebra& a, const Representation& r) {
  check_rep_shape(a, r);
  DefectReport report;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vector& xy = a.bracket(i, j);
      const Matrix &lx = r.rho_l[i], &ly = r.rho_l[j], &rx = r.rho_r[i], &ry = r.rho_r[j];
      Matrix l_xy = r.left(xy), r_xy = r.right(xy);
      report.add("left-left", {i + 1, j + 1}, l_xy - (lx * ly - ly * lx));
      report.add("right-left", {i + 1, j + 1}, r_xy - (lx * ry - ry * lx));
      report.add("right-right", {i + 1, j + 1}, r_xy - (lx * ry + ry * rx));
      report.add("right-annihilates", {i + 1, j + 1}, ry * (lx + rx));
    }
  return report;
}

/// Residuals of the modified Rota-Baxter representation identities per basis
/// vector x (weight outside K_V):
///   rho(Kx) K_V - K_V (rho(Kx) + rho(x) K_V) - weight rho(x)
inline DefectReport mrb_rep_defect(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r) {
  check_operator_shape(a, ctx);
  check_rep_shape(a, r);
  DefectReport report;
  const Matrix& kv = r.k_v;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector kx = ctx.op.column(i);
    auto residual = [&](const Matrix& rho_kx, const Matrix& rho_x) {
      return rho_kx * kv - kv * (rho_kx + rho_x * kv) - ctx.weight * rho_x;
    };
    report.add("left", {i + 1}, residual(r.left(kx), r.rho_l[i]));
    report.add("right", {i + 1}, residual(r.right(kx), r.rho_r[i]));
  }
  return report;
}

/// Residuals of the Rota-Baxter representation identities (weight inside T_V):
///   rho(Tx) T_V - T_V (rho(Tx) + rho(x) T_V + weight rho(x))
/// with T_V stored in r.k_v.
inline DefectReport rb_rep_defect(const LeibnizAlgebra& a, const OperatorContext& rb, const Representation& r) {
  check_operator_shape(a, rb);
  check_rep_shape(a, r);
  DefectReport report;
  const Matrix& tv = r.k_v;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector tx = rb.op.column(i);
    auto residual = [&](const Matrix& rho_tx, const Matrix& rho_x) {
      return rho_tx * tv - tv * (rho_tx + rho_x * tv + rb.weight * rho_x);
    };
    report.add("left", {i + 1}, residual(r.left(tx), r.rho_l[i]));
    report.add("right", {i + 1}, residual(r.right(tx), r.rho_r[i]));
  }
  return report;
}

/// Left and right multiplications of the algebra on itself, with the given
/// operator on V.
inline Representation regular_rep(const LeibnizAlgebra& a, const Matrix& k_v) {
  const std::size_t d = a.dim();
  Representation r{d, std::vector<Matrix>(d, Matrix(d, d)), std::vector<Matrix>(d, Matrix(d, d)), k_v};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      r.rho_l[i].set_column(j, a.bracket(i, j));
      r.rho_r[i].set_column(j, a.bracket(j, i));
    }
  return r;
}

inline Representation regular_rep(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  check_operator_shape(a, ctx);
  return regular_rep(a, ctx.op);
}

/// Regular representation with a zero operator on V (Leibniz-only use).
inline Representation regular_rep(const LeibnizAlgebra& a) { return regular_rep(a, Matrix(a.dim(), a.dim())); }

inline void require_rep(const LeibnizAlgebra& a, const Representation& r) {
  if (auto d = rep_defect(a, r); !d.empty()) throw Error(Errc::NotRepresentation, "representation axioms fail", d);
}

inline void require_mrb_rep(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r) {
  if (auto d = mrb_rep_defect(a, ctx, r); !d.empty())
    throw Error(Errc::NotMRBRepresentation, "modified Rota-Baxter representation identities fail", d);
}

/// (rho^L, rho^R, T_V) over (T, w) -> (rho^L, rho^R, 2 T_V + w I) over
/// (2T + w I, -w^2).
inline Representation rb_rep_to_mrb_rep(const LeibnizAlgebra& a, const OperatorContext& rb, const Representation& r) {
  if (auto d = rb_defect(a, rb); !d.empty())
    throw Error(Errc::NotRotaBaxter, "operator is not Rota-Baxter of weight " + to_string(rb.weight), d);
  DefectReport d = rep_defect(a, r);
  d.append(rb_rep_defect(a, rb, r));
  if (!d.empty()) throw Error(Errc::NotRBRepresentation, "Rota-Baxter representation identities fail", d);
  Representation out = r;
  out.k_v = Rational(2) * r.k_v + rb.weight * Matrix::identity(r.dim_v);
  ensure(mrb_rep_defect(a, rb_to_mrb(a, rb), out).empty(), "transformed representation is modified Rota-Baxter");
  return out;
}

/// rho_K(x) = rho(Kx) - K_V rho(x) for both actions; a representation of the
/// derived algebra g_K with the same K_V.
inline Representation induced_rep(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r) {
  require_mrb(a, ctx);
  require_leibniz(a);
  require_rep(a, r);
  require_mrb_rep(a, ctx, r);
  Representation out = r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vector kx = ctx.op.column(i);
    out.rho_l[i] = r.left(kx) - r.k_v * r.rho_l[i];
    out.rho_r[i] = r.right(kx) - r.k_v * r.rho_r[i];
  }
  LeibnizAlgebra derived = derived_algebra(a, ctx);
  ensure(rep_defect(derived, out).empty(), "induced representation is a representation of the derived algebra");
  ensure(mrb_rep_defect(derived, ctx, out).empty(), "induced representation is modified Rota-Baxter");
  return out;
}

/// Semidirect product g (+) V. Basis order: algebra basis first, then V.
/// [x+u, y+v] = [x,y] + rho^L(x) v + rho^R(y) u, operator K (+) K_V.
inline std::pair<LeibnizAlgebra, OperatorContext> semidirect(const LeibnizAlgebra& a, const OperatorContext& ctx,
                                                             const Representation& r) {
  require_leibniz(a);
  require_mrb(a, ctx);
  require_rep(a, r);
  require_mrb_rep(a, ctx, r);
  const std::size_t d = a.dim(), m = r.dim_v, n = d + m;
  auto total = LeibnizAlgebra::from_products(n, [&](std::size_t p, std::size_t q) {
    Vector out(n);
    if (p < d && q < d) {
      const Vector& b = a.bracket(p, q);
      for (std::size_t k = 0; k < d; ++k) out[k] = b[k];
    } else if (p < d && q >= d) {
      for (std::size_t k = 0; k < m; ++k) out[d + k] = r.rho_l[p](k, q - d);
    } else if (p >= d && q < d) {
      for (std::size_t k = 0; k < m; ++k) out[d + k] = r.rho_r[q](k, p - d);
    }
    return out;
  });
  Matrix op(n, n);
  op.set_block(0, 0, ctx.op);
  op.set_block(d, d, r.k_v);
  OperatorContext total_ctx{std::move(op), ctx.weight};
  ensure(leibniz_defect(total).empty(), "semidirect product is Leibniz");
  ensure(mrb_defect(total, total_ctx).empty(), "K (+) K_V is modified Rota-Baxter");
  return {std::move(total), std::move(total_ctx)};
}

}  // namespace mrb

#endif  // MRB_REPRESENTATION_HPP
