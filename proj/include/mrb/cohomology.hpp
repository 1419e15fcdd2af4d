#ifndef MRB_COHOMOLOGY_HPP
#define MRB_COHOMOLOGY_HPP

#include <mrb/cochain.hpp>
#include <mrb/leibniz.hpp>
#include <mrb/linalg.hpp>
#include <mrb/representation.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mrb {

/// Loday-Pirashvili coboundary of f in C^n(g, V):
///
///   (delta f)(x_1..x_{n+1}) = sum_{i<=n} (-1)^{i+1} rho^L(x_i) f(..., ^x_i, ...)
///                           + (-1)^{n+1} rho^R(x_{n+1}) f(x_1..x_n)
///                           + sum_{i<j} (-1)^i f(..., ^x_i, ..., [x_i, x_j], ...)
///
/// with [x_i, x_j] replacing x_j. In degree 0 this reads (delta v)(x) = -rho^R(x) v.
inline Cochain apply_delta(const LeibnizAlgebra& a, const Representation& r, const Cochain& f) {
  const std::size_t d = a.dim(), n = f.degree(), dv = r.dim_v;
  Cochain out(d, dv, n + 1);
  std::vector<bool> live(f.values().cols());
  for (std::size_t j = 0; j < live.size(); ++j) live[j] = !f.values().column_is_zero(j);

  // Flat position of the n-tuple obtained from `t` by dropping slot `skip`
  // and, if `replace` is set, putting index `k` into slot `replace`.
  auto flat_of = [&](const MultiIndex& t, std::size_t skip, std::size_t replace, std::size_t k) {
    std::size_t flat = 0;
    for (std::size_t s = 0; s < t.arity(); ++s) {
      if (s == skip) continue;
      flat = flat * d + (s == replace ? k : t[s]);
    }
    return flat;
  };
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  MultiIndex tuple(d, n + 1);
  do {
    Vector value(dv);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t col = flat_of(tuple, i, none, 0);
      if (!live[col]) continue;
      Vector term = r.rho_l[tuple[i]].apply(f.at(col));
      axpy(value, i % 2 == 0 ? Rational(1) : Rational(-1), term);
    }
    {
      std::size_t col = flat_of(tuple, n, none, 0);
      if (live[col]) axpy(value, n % 2 == 0 ? Rational(-1) : Rational(1), r.rho_r[tuple[n]].apply(f.at(col)));
    }
    for (std::size_t i = 0; i < n + 1; ++i)
      for (std::size_t j = i + 1; j < n + 1; ++j) {
        const Vector& b = a.bracket(tuple[i], tuple[j]);
        Rational sign = i % 2 == 0 ? Rational(-1) : Rational(1);  // (-1)^{i+1} for 0-based i
        for (std::size_t k = 0; k < d; ++k) {
          if (is_zero(b[k])) continue;
          std::size_t col = flat_of(tuple, i, j, k);
          if (live[col]) axpy(value, sign * b[k], f.at(col));
        }
      }
    out.values().set_column(tuple.flat(), value);
  } while (tuple.next());
  return out;
}

/// Coefficient attached to the subsets of size r in the chain map: the
/// arguments in the subset stay bare, the others get K applied.
///   r = 0: 1;   r odd: -(-w)^{(r-1)/2} (and K_V is applied after f);
///   r even >= 2: (-w)^{r/2}.
/// The even weights are the ones under which the map is a chain map and the
/// degree-2 case reproduces f(Kx,Ky) - K_V(f(Kx,y) + f(x,Ky)) - w f(x,y).
inline Rational phi_subset_weight(std::size_t r, const Rational& weight) {
  if (r == 0) return 1;
  Rational base = -weight;
  Rational p = 1;
  for (std::size_t i = 0; i < (r % 2 == 1 ? (r - 1) / 2 : r / 2); ++i) p *= base;
  return r % 2 == 1 ? Rational(-p) : p;
}

/// Chain map Phi^n: C^n_Leib -> C^n_op. Phi^0 is the identity of V; for n >= 1
///   Phi(f)(x_1..x_n) = sum_S weight(|S|) [K_V if |S| odd] f(a_1..a_n),
/// a_i = x_i for i in S and K x_i otherwise.
inline Cochain apply_phi(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r,
                         const Cochain& f) {
  const std::size_t d = a.dim(), n = f.degree();
  if (n == 0) return f;
  Cochain out(d, r.dim_v, n);
  CochainEvaluator eval(f);
  std::vector<Vector> bare(d), twisted(d);
  for (std::size_t i = 0; i < d; ++i) {
    bare[i] = unit_vector(d, i);
    twisted[i] = ctx.op.column(i);
  }
  std::vector<Rational> weights(n + 1);
  for (std::size_t s = 0; s <= n; ++s) weights[s] = phi_subset_weight(s, ctx.weight);

  std::vector<const Vector*> args(n);
  MultiIndex tuple(d, n);
  do {
    Vector even_part(r.dim_v), odd_part(r.dim_v);
    for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
      std::size_t size = 0;
      for (std::size_t t = 0; t < n; ++t) {
        bool in = (subset >> (n - 1 - t)) & 1U;
        size += in;
        args[t] = in ? &bare[tuple[t]] : &twisted[tuple[t]];
      }
      if (is_zero(weights[size])) continue;
      Vector v = eval(args);
      axpy(size % 2 == 1 ? odd_part : even_part, weights[size], v);
    }
    out.values().set_column(tuple.flat(), even_part + r.k_v.apply(odd_part));
  } while (tuple.next());
  return out;
}

/// Matrix of a linear cochain map in flat coordinates, assembled column by
/// column from basis cochains.
template <class Map>
Matrix assemble_cochain_map(std::size_t dim_g, std::size_t dim_v, std::size_t degree, std::size_t out_degree,
                            Map&& map) {
  const std::size_t in_size = dim_v * ipow(dim_g, degree);
  Matrix m(dim_v * ipow(dim_g, out_degree), in_size);
  for (std::size_t p = 0; p < in_size; ++p) m.set_column(p, map(Cochain::basis(dim_g, dim_v, degree, p)).flatten());
  return m;
}

/// Matrix of delta^n : C^n(g, V) -> C^{n+1}(g, V).
inline Matrix delta_matrix(const LeibnizAlgebra& a, const Representation& r, std::size_t n) {
  check_rep_shape(a, r);
  return assemble_cochain_map(a.dim(), r.dim_v, n, n + 1, [&](const Cochain& f) { return apply_delta(a, r, f); });
}

/// The three complexes attached to a modified Rota-Baxter Leibniz algebra and
/// a representation over it: the Leibniz complex (delta), the operator complex
/// (partial = delta of the derived algebra with the induced representation),
/// the chain map Phi between them, and the cone complex (d).
class MrbComplex {
 public:
  MrbComplex(LeibnizAlgebra a, OperatorContext ctx, Representation r)
      : a_(std::move(a)), ctx_(std::move(ctx)), r_(std::move(r)) {
    check_operator_shape(a_, ctx_);
    check_rep_shape(a_, r_);
    derived_ = derived_algebra(a_, ctx_);
    induced_ = induced_rep(a_, ctx_, r_);
  }

  const LeibnizAlgebra& algebra() const { return a_; }
  const OperatorContext& context() const { return ctx_; }
  const Representation& representation() const { return r_; }
  const LeibnizAlgebra& derived() const { return derived_; }
  const Representation& induced() const { return induced_; }

  std::size_t dim_g() const { return a_.dim(); }
  std::size_t dim_v() const { return r_.dim_v; }
  /// dim C^n_Leib = dim C^n_op.
  std::size_t cochain_dim(std::size_t n) const { return r_.dim_v * ipow(a_.dim(), n); }
  std::size_t cone_dim(std::size_t n) const { return n == 0 ? cochain_dim(0) : cochain_dim(n) + cochain_dim(n - 1); }

  Cochain delta(const Cochain& f) const { return apply_delta(a_, r_, f); }
  Cochain partial(const Cochain& f) const { return apply_delta(derived_, induced_, f); }
  Cochain phi(const Cochain& f) const { return apply_phi(a_, ctx_, r_, f); }

  /// d^n(f, g) = (delta f, -partial g - Phi f);  d^0(f) = (delta f, -Phi f).
  ConeCochain cone(const ConeCochain& c) const {
    const std::size_t n = c.degree();
    if ((n == 0) != !c.op.has_value()) throw Error(Errc::DimensionMismatch, "cone cochain shape");
    Cochain second = Rational(-1) * phi(c.leib);
    if (c.op) second -= partial(*c.op);
    return {delta(c.leib), std::move(second)};
  }

  Matrix delta_matrix(std::size_t n) const {
    return assemble_cochain_map(dim_g(), dim_v(), n, n + 1, [&](const Cochain& f) { return delta(f); });
  }
  Matrix partial_matrix(std::size_t n) const {
    return assemble_cochain_map(dim_g(), dim_v(), n, n + 1, [&](const Cochain& f) { return partial(f); });
  }
  Matrix phi_matrix(std::size_t n) const {
    return assemble_cochain_map(dim_g(), dim_v(), n, n, [&](const Cochain& f) { return phi(f); });
  }

  /// Block matrix of d^n on C^n_Leib (+) C^{n-1}_op:
  ///   [ delta^n        0           ]
  ///   [ -Phi^n   -partial^{n-1}    ]
  Matrix cone_matrix(std::size_t n) const {
    Matrix m(cone_dim(n + 1), cone_dim(n));
    m.set_block(0, 0, delta_matrix(n));
    m.set_block(cochain_dim(n + 1), 0, Rational(-1) * phi_matrix(n));
    if (n > 0) m.set_block(cochain_dim(n + 1), cochain_dim(n), Rational(-1) * partial_matrix(n - 1));
    return m;
  }

 private:
  LeibnizAlgebra a_;
  OperatorContext ctx_;
  Representation r_;
  LeibnizAlgebra derived_;
  Representation induced_;
};

inline Matrix partial_matrix(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r,
                             std::size_t n) {
  return MrbComplex(a, ctx, r).partial_matrix(n);
}

inline Matrix phi_matrix(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r,
                         std::size_t n) {
  return MrbComplex(a, ctx, r).phi_matrix(n);
}

inline Matrix cone_differential(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r,
                                std::size_t n) {
  return MrbComplex(a, ctx, r).cone_matrix(n);
}

enum class ComplexKind { Leibniz = 0, Operator = 1, Cone = 2 };

inline const char* complex_name(ComplexKind k) {
  switch (k) {
    case ComplexKind::Leibniz: return "leibniz";
    case ComplexKind::Operator: return "operator";
    case ComplexKind::Cone: return "cone";
  }
  return "?";
}

struct CohomologyOptions {
  std::size_t max_degree = 3;
  /// Degrees above this need an explicit raise (cochain spaces grow as dimV d^n).
  std::size_t degree_bound = 3;
  /// Largest admissible cochain-space dimension among all spaces touched.
  std::size_t budget = 20000;
  bool representatives = false;
};

struct CohomologyRow {
  std::size_t degree = 0;
  std::size_t cochain_dim = 0;
  std::size_t cohomology_dim = 0;
  /// Flat cocycles spanning a complement of the coboundaries (when requested).
  std::vector<Vector> representatives;
};

/// Per-complex tables, degree 0..max_degree. A complex that was not computed
/// (operator/cone without an operator) has an empty table.
struct CohomologyReport {
  std::size_t max_degree = 0;
  std::array<std::vector<CohomologyRow>, 3> tables;

  const std::vector<CohomologyRow>& table(ComplexKind k) const { return tables[static_cast<std::size_t>(k)]; }
  std::size_t h(ComplexKind k, std::size_t n) const { return table(k).at(n).cohomology_dim; }
};

namespace detail {

// Kernel vectors of `next` that are independent modulo the image of `prev`.
inline std::vector<Vector> cohomology_representatives(const Matrix& next, const std::optional<Matrix>& prev) {
  std::vector<Vector> chosen;
  std::vector<Vector> span;
  if (prev)
    for (std::size_t c = 0; c < prev->cols(); ++c) span.push_back(prev->column(c));
  std::size_t current = span.empty() ? 0 : rank(Matrix::from_columns(next.cols(), span));
  for (auto& k : kernel_basis(next)) {
    span.push_back(k);
    std::size_t r = rank(Matrix::from_columns(next.cols(), span));
    if (r > current) {
      chosen.push_back(k);
      current = r;
    } else {
      span.pop_back();
    }
  }
  return chosen;
}

// Fills one table from differentials diff(0..max_degree).
template <class Diff>
std::vector<CohomologyRow> complex_table(std::size_t max_degree, bool reps, Diff&& diff) {
  std::vector<CohomologyRow> rows;
  std::optional<Matrix> prev;
  std::size_t prev_rank = 0;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    Matrix dn = diff(n);
    std::size_t rk = rank(dn);
    CohomologyRow row;
    row.degree = n;
    row.cochain_dim = dn.cols();
    row.cohomology_dim = dn.cols() - rk - prev_rank;
    if (reps) row.representatives = cohomology_representatives(dn, prev);
    rows.push_back(std::move(row));
    prev_rank = rk;
    prev = std::move(dn);
  }
  return rows;
}

inline void check_budget(std::size_t dim_v, std::size_t dim_g, const CohomologyOptions& opt, bool cone) {
  if (opt.max_degree > opt.degree_bound)
    throw Error(Errc::BudgetExceeded, "degree " + std::to_string(opt.max_degree) + " exceeds the degree bound " +
                                          std::to_string(opt.degree_bound));
  std::size_t top = dim_v * ipow(dim_g, opt.max_degree + 1);
  if (cone) top += dim_v * ipow(dim_g, opt.max_degree);
  if (top > opt.budget)
    throw Error(Errc::BudgetExceeded, "cochain space of dimension " + std::to_string(top) + " exceeds budget " +
                                          std::to_string(opt.budget));
}

}  // namespace detail

/// Leibniz cohomology only (no operator needed).
inline CohomologyReport leibniz_cohomology(const LeibnizAlgebra& a, const Representation& r,
                                           const CohomologyOptions& opt = {}) {
  check_rep_shape(a, r);
  detail::check_budget(r.dim_v, a.dim(), opt, false);
  CohomologyReport rep;
  rep.max_degree = opt.max_degree;
  rep.tables[0] = detail::complex_table(opt.max_degree, opt.representatives,
                                        [&](std::size_t n) { return delta_matrix(a, r, n); });
  return rep;
}

/// dim H^n for the Leibniz, operator and cone complexes, n = 0..max_degree.
inline CohomologyReport cohomology_dimensions(const MrbComplex& cx, const CohomologyOptions& opt = {}) {
  detail::check_budget(cx.dim_v(), cx.dim_g(), opt, true);
  CohomologyReport rep;
  rep.max_degree = opt.max_degree;
  rep.tables[0] = detail::complex_table(opt.max_degree, opt.representatives,
                                        [&](std::size_t n) { return cx.delta_matrix(n); });
  rep.tables[1] = detail::complex_table(opt.max_degree, opt.representatives,
                                        [&](std::size_t n) { return cx.partial_matrix(n); });
  rep.tables[2] = detail::complex_table(opt.max_degree, opt.representatives,
                                        [&](std::size_t n) { return cx.cone_matrix(n); });
  return rep;
}

inline CohomologyReport cohomology_dimensions(const LeibnizAlgebra& a, const OperatorContext& ctx,
                                              const Representation& r, const CohomologyOptions& opt = {}) {
  return cohomology_dimensions(MrbComplex(a, ctx, r), opt);
}

struct CochainClass {
  bool cocycle = false;
  bool coboundary = false;
  /// w with d^{n-1} w = c, when c is a coboundary.
  std::optional<ConeCochain> witness;
};

/// Decides d^n c = 0 and c in image(d^{n-1}) exactly.
inline CochainClass classify_cochain(const MrbComplex& cx, const ConeCochain& c) {
  const std::size_t n = c.degree();
  if (c.leib.dim_g() != cx.dim_g() || c.leib.dim_v() != cx.dim_v() || (n > 0) != c.op.has_value() ||
      (c.op && c.op->degree() + 1 != n))
    throw Error(Errc::DimensionMismatch, "cone cochain does not belong to this complex");
  CochainClass out;
  out.cocycle = cx.cone(c).flatten() == Vector(cx.cone_dim(n + 1));
  if (n == 0) {
    out.coboundary = c.leib.is_zero();
    return out;
  }
  auto sol = solve(cx.cone_matrix(n - 1), c.flatten());
  if (sol) {
    out.coboundary = true;
    out.witness = ConeCochain::from_flat(cx.dim_g(), cx.dim_v(), n - 1, *sol);
  }
  return out;
}

inline CochainClass classify_cochain(const LeibnizAlgebra& a, const OperatorContext& ctx, const Representation& r,
                                     const ConeCochain& c) {
  return classify_cochain(MrbComplex(a, ctx, r), c);
}

/// Folds a degree-1 cone cochain (g1, g0) into the single cochain
/// g1 + delta^0(g0), which has the same image under d^1 once paired with a
/// zero operator part (Phi^1 delta^0 = partial^0).
inline Cochain absorb_degree_zero(const MrbComplex& cx, const ConeCochain& w) {
  if (w.degree() != 1 || !w.op) throw Error(Errc::DimensionMismatch, "expected a degree-1 cone cochain");
  return w.leib + cx.delta(*w.op);
}

}  // namespace mrb

#endif  // MRB_COHOMOLOGY_HPP
