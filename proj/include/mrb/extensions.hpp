#ifndef MRB_EXTENSIONS_HPP
#define MRB_EXTENSIONS_HPP

#include <mrb/cohomology.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace mrb {

/// 0 -> (V, 0, K_V) --i--> (total, totalOp) --p--> (base, baseOp) -> 0.
/// The sequence is stored with explicit i and p, so the split coordinates are
/// never assumed.
struct ExtensionData {
  LeibnizAlgebra total;
  OperatorContext total_op;
  Matrix incl;  // (d + m) x m
  Matrix proj;  // d x (d + m)
  LeibnizAlgebra base;
  OperatorContext base_op;
  Matrix fiber_op;  // m x m

  std::size_t base_dim() const { return base.dim(); }
  std::size_t fiber_dim() const { return fiber_op.rows(); }
};

/// (psi, chi): psi in C^2(g, V), chi in C^1(g, V).
struct CocyclePair {
  Cochain psi;
  Cochain chi;

  ConeCochain as_cone() const { return {psi, chi}; }
  static CocyclePair from_cone(const ConeCochain& c) {
    if (c.degree() != 2) throw Error(Errc::DimensionMismatch, "expected a degree-2 cone cochain");
    return {c.leib, *c.op};
  }
  friend bool operator==(const CocyclePair&, const CocyclePair&) = default;
};

/// Certifies a genuine abelian extension: one section per structural
/// requirement, plus the Leibniz and modified Rota-Baxter checks on the total
/// algebra. Malformed shapes are reported in a "shape" section.
inline DefectReport validate_extension(const ExtensionData& e) {
  DefectReport report;
  const std::size_t d = e.base.dim(), m = e.fiber_op.rows(), n = e.total.dim();
  if (n != d + m || e.incl.rows() != n || e.incl.cols() != m || e.proj.rows() != d || e.proj.cols() != n ||
      e.fiber_op.cols() != m || e.total_op.op.rows() != n || e.total_op.op.cols() != n || e.base_op.op.rows() != d ||
      e.base_op.op.cols() != d) {
    report.add("shape", {}, Vector{Rational(1)});
    return report;
  }
  if (e.total_op.weight != e.base_op.weight) report.add("weight", {}, Vector{e.total_op.weight - e.base_op.weight});

  Matrix pi = e.proj * e.incl;
  for (std::size_t u = 0; u < m; ++u) report.add("exact", {u + 1}, pi.column(u));
  if (rank(e.incl) < m) report.add("exact-injective", {}, Vector{Rational(m - rank(e.incl))});
  if (rank(e.proj) < d) report.add("exact-surjective", {}, Vector{Rational(d - rank(e.proj))});

  Matrix left = e.total_op.op * e.incl - e.incl * e.fiber_op;
  for (std::size_t u = 0; u < m; ++u) report.add("operator-diagram-fiber", {u + 1}, left.column(u));
  Matrix right = e.proj * e.total_op.op - e.base_op.op * e.proj;
  for (std::size_t a = 0; a < n; ++a) report.add("operator-diagram-base", {a + 1}, right.column(a));

  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v)
      report.add("abelian", {u + 1, v + 1}, e.total.bracket(e.incl.column(u), e.incl.column(v)));
  // With exactness, image(i) = kernel(p).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t v = 0; v < m; ++v) {
      Vector ea = unit_vector(n, a), iv = e.incl.column(v);
      report.add("ideal-left", {a + 1, v + 1}, e.proj.apply(e.total.bracket(ea, iv)));
      report.add("ideal-right", {a + 1, v + 1}, e.proj.apply(e.total.bracket(iv, ea)));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      report.add("projection-morphism", {a + 1, b + 1},
                 e.proj.apply(e.total.bracket(a, b)) - e.base.bracket(e.proj.column(a), e.proj.column(b)));
  report.append(leibniz_defect(e.total));
  report.append(mrb_defect(e.total, e.total_op));
  return report;
}

inline void require_extension(const ExtensionData& e) {
  if (auto r = validate_extension(e); !r.empty()) throw Error(Errc::NotAnExtension, "not an abelian extension", r);
}

/// A right inverse of p (free variables zeroed in elimination order).
inline Matrix section_from_proj(const ExtensionData& e) {
  require_extension(e);
  return solve_right_inverse(e.proj);
}

/// Representation and 2-cocycle determined by a section s. The retraction t
/// is the unique map with i t = I - s p.
inline std::pair<Representation, CocyclePair> extract_cocycle(const ExtensionData& e, const Matrix& s) {
  require_extension(e);
  const std::size_t d = e.base_dim(), m = e.fiber_dim(), n = e.total.dim();
  if (s.rows() != n || s.cols() != d) throw Error(Errc::NotASection, "section has the wrong shape");
  if (!(e.proj * s == Matrix::identity(d))) throw Error(Errc::NotASection, "p s is not the identity");
  Matrix t = solve_left_inverse(e.incl) * (Matrix::identity(n) - s * e.proj);

  Representation rep{m, std::vector<Matrix>(d, Matrix(m, m)), std::vector<Matrix>(d, Matrix(m, m)), e.fiber_op};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t v = 0; v < m; ++v) {
      Vector sa = s.column(a), iv = e.incl.column(v);
      rep.rho_l[a].set_column(v, t.apply(e.total.bracket(sa, iv)));
      rep.rho_r[a].set_column(v, t.apply(e.total.bracket(iv, sa)));
    }
  CocyclePair c{Cochain(d, m, 2), Cochain(d, m, 1)};
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b)
      c.psi.values().set_column(
          a * d + b, t.apply(e.total.bracket(s.column(a), s.column(b)) - s.apply(e.base.bracket(a, b))));
    c.chi.values().set_column(a, t.apply(e.total_op.op.apply(s.column(a)) - s.apply(e.base_op.op.column(a))));
  }
  ensure(rep_defect(e.base, rep).empty(), "extracted actions form a representation");
  ensure(mrb_rep_defect(e.base, e.base_op, rep).empty(), "extracted representation is modified Rota-Baxter");
  MrbComplex cx(e.base, e.base_op, rep);
  ensure(cx.cone(c.as_cone()).flatten() == Vector(cx.cone_dim(3)), "extracted pair is a 2-cocycle");
  return {std::move(rep), std::move(c)};
}

/// Direct-sum model on g (+) V (algebra basis first):
///   [x+u, y+v] = [x,y] + rho^L(x) v + rho^R(y) u + psi(x,y)
///   K(x+u)     = K x + chi(x) + K_V u
/// It is an abelian extension exactly when (psi, chi) is a 2-cocycle; otherwise
/// NotACocycle is raised with the validation report.
inline ExtensionData extension_from_cocycle(const LeibnizAlgebra& a, const OperatorContext& ctx,
                                            const Representation& r, const CocyclePair& c) {
  MrbComplex cx(a, ctx, r);
  const std::size_t d = a.dim(), m = r.dim_v, n = d + m;
  if (c.psi.degree() != 2 || c.chi.degree() != 1 || c.psi.dim_g() != d || c.chi.dim_g() != d ||
      c.psi.dim_v() != m || c.chi.dim_v() != m)
    throw Error(Errc::DimensionMismatch, "cocycle pair shape does not match the representation");
  ExtensionData e;
  e.total = LeibnizAlgebra::from_products(n, [&](std::size_t p, std::size_t q) {
    Vector out(n);
    if (p < d && q < d) {
      const Vector& b = a.bracket(p, q);
      for (std::size_t k = 0; k < d; ++k) out[k] = b[k];
      for (std::size_t k = 0; k < m; ++k) out[d + k] = c.psi.values()(k, p * d + q);
    } else if (p < d) {
      for (std::size_t k = 0; k < m; ++k) out[d + k] = r.rho_l[p](k, q - d);
    } else if (q < d) {
      for (std::size_t k = 0; k < m; ++k) out[d + k] = r.rho_r[q](k, p - d);
    }
    return out;
  });
  Matrix op(n, n);
  op.set_block(0, 0, ctx.op);
  op.set_block(d, 0, c.chi.values());
  op.set_block(d, d, r.k_v);
  e.total_op = {std::move(op), ctx.weight};
  e.incl = Matrix(n, m);
  e.incl.set_block(d, 0, Matrix::identity(m));
  e.proj = Matrix(d, n);
  e.proj.set_block(0, 0, Matrix::identity(d));
  e.base = a;
  e.base_op = ctx;
  e.fiber_op = r.k_v;

  DefectReport report = validate_extension(e);
  bool cocycle = cx.cone(c.as_cone()).flatten() == Vector(cx.cone_dim(3));
  ensure(report.empty() == cocycle, "direct-sum model is an extension iff the pair is a 2-cocycle");
  if (!report.empty()) throw Error(Errc::NotACocycle, "(psi, chi) is not a 2-cocycle", report);
  return e;
}

/// The canonical section (id, 0) of a direct-sum model.
inline Matrix canonical_section(std::size_t base_dim, std::size_t fiber_dim) {
  Matrix s(base_dim + fiber_dim, base_dim);
  s.set_block(0, 0, Matrix::identity(base_dim));
  return s;
}

/// gamma with c_to - c_from = d^1(gamma, 0), if the two cocycles are cohomologous.
inline std::optional<Cochain> cohomologous_gamma(const MrbComplex& cx, const CocyclePair& from, const CocyclePair& to) {
  ConeCochain diff{to.psi - from.psi, to.chi - from.chi};
  auto cls = classify_cochain(cx, diff);
  if (!cls.coboundary) return std::nullopt;
  return absorb_degree_zero(cx, *cls.witness);
}

namespace detail {

inline bool is_direct_sum_model(const ExtensionData& e) {
  const std::size_t d = e.base_dim(), m = e.fiber_dim();
  Matrix incl(d + m, m), proj(d, d + m);
  incl.set_block(d, 0, Matrix::identity(m));
  proj.set_block(0, 0, Matrix::identity(d));
  return e.incl == incl && e.proj == proj;
}

}  // namespace detail

/// Isomorphism zeta(x + u) = x - gamma(x) + u from the direct-sum model `from`
/// to the direct-sum model `to`, valid when the cocycle of `to` equals the
/// cocycle of `from` plus d^1(gamma, 0) = (delta^1 gamma, -Phi^1 gamma).
inline Matrix iso_from_gamma(const ExtensionData& from, const ExtensionData& to, const Cochain& gamma) {
  require_extension(from);
  require_extension(to);
  if (!detail::is_direct_sum_model(from) || !detail::is_direct_sum_model(to))
    throw Error(Errc::NotAnExtension, "iso_from_gamma needs direct-sum models");
  if (!(from.base == to.base) || !(from.base_op == to.base_op) || !(from.fiber_op == to.fiber_op))
    throw Error(Errc::DimensionMismatch, "extensions are over different bases or modules");
  const std::size_t d = from.base_dim(), m = from.fiber_dim();
  if (gamma.degree() != 1 || gamma.dim_g() != d || gamma.dim_v() != m)
    throw Error(Errc::DimensionMismatch, "gamma must be a V-valued 1-cochain");
  Matrix s = canonical_section(d, m);
  auto [rep_from, c_from] = extract_cocycle(from, s);
  auto [rep_to, c_to] = extract_cocycle(to, s);
  if (!(rep_from == rep_to)) throw Error(Errc::DimensionMismatch, "extensions induce different representations");
  MrbComplex cx(from.base, from.base_op, rep_from);
  ConeCochain shift = cx.cone(ConeCochain{gamma, Cochain(d, m, 0)});
  if (!(c_to.psi - c_from.psi == shift.leib) || !(c_to.chi - c_from.chi == *shift.op))
    throw Error(Errc::NotCohomologous, "cocycle difference is not d^1(gamma)");

  Matrix zeta = Matrix::identity(d + m);
  zeta.set_block(d, 0, Rational(-1) * gamma.values());
  ensure(morphism_defect(from.total, from.total_op, to.total, to.total_op, zeta).empty(),
         "zeta is a morphism of modified Rota-Baxter Leibniz algebras");
  ensure(zeta * from.incl == to.incl && to.proj * zeta == from.proj, "zeta commutes with inclusion and projection");
  return zeta;
}

}  // namespace mrb

#endif  // MRB_EXTENSIONS_HPP
