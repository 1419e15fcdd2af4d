#ifndef MRB_DEFORMATION_HPP
#define MRB_DEFORMATION_HPP

#include <mrb/cohomology.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mrb {

/// mu_t = sum mu_i t^i and K_t = sum K_i t^i truncated at t^{N+1}. mu_i are
/// algebra-valued 2-cochains (d x d^2), K_i are d x d matrices; index 0 holds
/// the base bracket and operator.
class TruncatedDeformation {
 public:
  TruncatedDeformation(LeibnizAlgebra base, OperatorContext ctx, std::vector<Cochain> mu, std::vector<Matrix> kk)
      : base_(std::move(base)), ctx_(std::move(ctx)), mu_(std::move(mu)), kk_(std::move(kk)) {
    check_operator_shape(base_, ctx_);
    const std::size_t d = base_.dim();
    if (mu_.empty() || mu_.size() != kk_.size())
      throw Error(Errc::OrderMismatch, "bracket and operator series must have the same nonzero length");
    for (const auto& m : mu_)
      if (m.degree() != 2 || m.dim_g() != d || m.dim_v() != d)
        throw Error(Errc::DimensionMismatch, "deformation bracket terms must be algebra-valued 2-cochains");
    for (const auto& k : kk_)
      if (k.rows() != d || k.cols() != d) throw Error(Errc::DimensionMismatch, "deformation operator terms must be dxd");
    if (!(mu_[0] == bracket_cochain(base_)) || !(kk_[0] == ctx_.op))
      throw Error(Errc::NotADeformation, "order-0 terms must equal the base bracket and operator");
  }

  static Cochain bracket_cochain(const LeibnizAlgebra& a) { return Cochain(a.dim(), 2, a.bracket_matrix()); }

  /// mu_i = delta_{i0} mu, K_i = delta_{i0} K.
  static TruncatedDeformation trivial(const LeibnizAlgebra& a, const OperatorContext& ctx, std::size_t order) {
    std::vector<Cochain> mu(order + 1, Cochain(a.dim(), a.dim(), 2));
    std::vector<Matrix> kk(order + 1, Matrix(a.dim(), a.dim()));
    mu[0] = bracket_cochain(a);
    kk[0] = ctx.op;
    return TruncatedDeformation(a, ctx, std::move(mu), std::move(kk));
  }

  const LeibnizAlgebra& base() const { return base_; }
  const OperatorContext& context() const { return ctx_; }
  std::size_t order() const { return mu_.size() - 1; }
  std::size_t dim() const { return base_.dim(); }
  const std::vector<Cochain>& mu() const { return mu_; }
  const std::vector<Matrix>& kk() const { return kk_; }

  friend bool operator==(const TruncatedDeformation& a, const TruncatedDeformation& b) {
    return a.base_ == b.base_ && a.ctx_ == b.ctx_ && a.mu_ == b.mu_ && a.kk_ == b.kk_;
  }

 private:
  LeibnizAlgebra base_;
  OperatorContext ctx_;
  std::vector<Cochain> mu_;
  std::vector<Matrix> kk_;
};

/// psi_t = sum psi_i t^i with psi_0 = I.
struct FormalIso {
  std::vector<Matrix> psi;

  static FormalIso identity(std::size_t dim, std::size_t order) {
    FormalIso f{std::vector<Matrix>(order + 1, Matrix(dim, dim))};
    f.psi[0] = Matrix::identity(dim);
    return f;
  }
};

struct OrderResidual {
  DefectReport leibniz;   // basis triples
  DefectReport op;        // basis pairs
  bool empty() const { return leibniz.empty() && op.empty(); }
};

/// Coefficient of t^n in the Leibniz identity and the modified Rota-Baxter
/// identity for (mu_t, K_t), n = 0..N. The weight term appears once per order
/// (as weight * mu_n).
inline std::vector<OrderResidual> deformation_residuals(const TruncatedDeformation& def) {
  const std::size_t d = def.dim(), order = def.order();
  std::vector<CochainEvaluator> mu;
  for (const auto& m : def.mu()) mu.emplace_back(m);
  auto apply = [&](std::size_t i, const Vector& x, const Vector& y) {
    const Vector* args[] = {&x, &y};
    return mu[i](args);
  };
  std::vector<Vector> e(d);
  for (std::size_t i = 0; i < d; ++i) e[i] = unit_vector(d, i);

  std::vector<OrderResidual> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) {
          Vector r(d);
          for (std::size_t i = 0; i <= n; ++i) {
            const std::size_t j = n - i;
            r = r + apply(i, e[x], apply(j, e[y], e[z]));
            r = r - apply(i, apply(j, e[x], e[y]), e[z]);
            r = r - apply(i, e[y], apply(j, e[x], e[z]));
          }
          out[n].leibniz.add("leibniz", {x + 1, y + 1, z + 1}, r);
        }
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        Vector r(d);
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; i + j <= n; ++j) {
            const std::size_t k = n - i - j;
            Vector kjx = def.kk()[j].column(x), kky = def.kk()[k].column(y);
            r = r + apply(i, kjx, kky);
            // K_i (mu_j(K_k x, y) + mu_j(x, K_k y))
            Vector kkx = def.kk()[k].column(x);
            r = r - def.kk()[i].apply(apply(j, kkx, e[y]) + apply(j, e[x], kky));
          }
        axpy(r, -def.context().weight, def.mu()[n].at(x * d + y));
        out[n].op.add("modified-rota-baxter", {x + 1, y + 1}, r);
      }
  }
  return out;
}

/// True when every order up to and including `through` is residual-free.
inline bool residual_free_through(const std::vector<OrderResidual>& res, std::size_t through) {
  for (std::size_t n = 0; n <= through && n < res.size(); ++n)
    if (!res[n].empty()) return false;
  return true;
}

/// The cone complex of the base with coefficients in its regular representation.
inline MrbComplex regular_complex(const TruncatedDeformation& def) {
  return MrbComplex(def.base(), def.context(), regular_rep(def.base(), def.context()));
}

/// (mu_1, K_1) as a degree-2 cone cochain; it is a cocycle.
inline ConeCochain infinitesimal(const TruncatedDeformation& def) {
  if (def.order() < 1) throw Error(Errc::NotADeformation, "deformation has no first-order term");
  auto res = deformation_residuals(def);
  if (!residual_free_through(res, 1)) {
    DefectReport all;
    for (std::size_t n = 0; n <= 1; ++n) {
      all.append(res[n].leibniz);
      all.append(res[n].op);
    }
    throw Error(Errc::NotADeformation, "deformation equations fail through order 1", all);
  }
  ConeCochain c{def.mu()[1], Cochain(def.dim(), 1, def.kk()[1])};
  ensure(classify_cochain(regular_complex(def), c).cocycle, "infinitesimal is a 2-cocycle");
  return c;
}

namespace detail {

// Coefficients of psi_t^{-1} up to t^order (psi_0 = I): inv_n = -sum_{i>=1} psi_i inv_{n-i}.
inline std::vector<Matrix> inverse_series(const FormalIso& iso) {
  const std::size_t order = iso.psi.size() - 1, d = iso.psi[0].rows();
  std::vector<Matrix> inv(order + 1, Matrix(d, d));
  inv[0] = Matrix::identity(d);
  for (std::size_t n = 1; n <= order; ++n)
    for (std::size_t i = 1; i <= n; ++i) inv[n] -= iso.psi[i] * inv[n - i];
  return inv;
}

inline void check_iso(const TruncatedDeformation& def, const FormalIso& iso) {
  if (iso.psi.size() != def.order() + 1)
    throw Error(Errc::OrderMismatch, "formal isomorphism has " + std::to_string(iso.psi.size()) +
                                         " terms, deformation has order " + std::to_string(def.order()));
  for (const auto& p : iso.psi)
    if (p.rows() != def.dim() || p.cols() != def.dim()) throw Error(Errc::DimensionMismatch, "psi_i must be dxd");
  if (!(iso.psi[0] == Matrix::identity(def.dim()))) throw Error(Errc::DimensionMismatch, "psi_0 must be the identity");
}

inline std::size_t first_failing_order(const std::vector<OrderResidual>& res) {
  for (std::size_t n = 0; n < res.size(); ++n)
    if (!res[n].empty()) return n;
  return res.size();
}

}  // namespace detail

/// mu'_t = psi_t^{-1} mu_t (psi_t (x) psi_t), K'_t = psi_t^{-1} K_t psi_t
/// modulo t^{N+1}; psi_t then maps the result onto the input.
inline TruncatedDeformation apply_formal_iso(const TruncatedDeformation& def, const FormalIso& iso) {
  detail::check_iso(def, iso);
  const std::size_t order = def.order(), d = def.dim();
  auto inv = detail::inverse_series(iso);
  std::vector<Cochain> mu(order + 1, Cochain(d, d, 2));
  std::vector<Matrix> kk(order + 1, Matrix(d, d));
  for (std::size_t a = 0; a <= order; ++a)
    for (std::size_t b = 0; a + b <= order; ++b) {
      Matrix left = inv[a] * def.mu()[b].values();
      Matrix left_k = inv[a] * def.kk()[b];
      for (std::size_t c = 0; a + b + c <= order; ++c) {
        kk[a + b + c] += left_k * iso.psi[c];
        for (std::size_t e = 0; a + b + c + e <= order; ++e)
          mu[a + b + c + e].values() += left * kron(iso.psi[c], iso.psi[e]);
      }
    }
  TruncatedDeformation out(def.base(), def.context(), std::move(mu), std::move(kk));
  std::size_t before = detail::first_failing_order(deformation_residuals(def));
  std::size_t after = detail::first_failing_order(deformation_residuals(out));
  ensure(after >= before, "gauge transformation preserves residual-freeness");
  return out;
}

/// Per-order residuals of psi_t mu2_t = mu1_t (psi_t (x) psi_t) ("leibniz"
/// section, basis pairs) and psi_t K2_t = K1_t psi_t ("operator" section,
/// basis vectors): psi_t witnesses def2 ~ def1 up to the order where all are
/// empty.
inline std::vector<DefectReport> equivalence_residuals(const TruncatedDeformation& def1,
                                                       const TruncatedDeformation& def2, const FormalIso& iso) {
  if (def1.order() != def2.order()) throw Error(Errc::OrderMismatch, "deformations have different orders");
  if (!(def1.base() == def2.base()) || !(def1.context() == def2.context()))
    throw Error(Errc::DimensionMismatch, "deformations have different bases");
  detail::check_iso(def1, iso);
  const std::size_t order = def1.order(), d = def1.dim();
  std::vector<DefectReport> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Matrix mu(d, d * d), kk(d, d);
    for (std::size_t a = 0; a <= n; ++a) {
      mu += iso.psi[a] * def2.mu()[n - a].values();
      kk += iso.psi[a] * def2.kk()[n - a];
    }
    for (std::size_t b = 0; b <= n; ++b)
      for (std::size_t c = 0; b + c <= n; ++c) {
        mu -= def1.mu()[b].values() * kron(iso.psi[c], iso.psi[n - b - c]);
        if (b + c == n) kk -= def1.kk()[b] * iso.psi[c];
      }
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) out[n].add("leibniz", {x + 1, y + 1}, mu.column(x * d + y));
    for (std::size_t x = 0; x < d; ++x) out[n].add("operator", {x + 1}, kk.column(x));
  }
  return out;
}

/// A 1-cochain of the cone complex (psi_1', x) with d^1(psi_1', x) = (mu_1, K_1).
struct Trivializer {
  Matrix psi1;  // d x d, i.e. an algebra-valued 1-cochain
  Vector x;     // C^0 = the algebra itself
};

/// The witness classify_cochain finds for the infinitesimal, if it is a
/// coboundary.
inline std::optional<Trivializer> find_trivializer(const TruncatedDeformation& def) {
  auto cls = classify_cochain(regular_complex(def), infinitesimal(def));
  if (!cls.coboundary) return std::nullopt;
  return Trivializer{cls.witness->leib.values(), cls.witness->op->values().column(0)};
}

/// One inductive step of the rigidity argument: with psi_1 = psi_1' + delta^0(x)
/// and psi_t = I - psi_1 t, the gauge-transformed deformation has vanishing
/// first-order terms.
inline TruncatedDeformation gauge_step(const TruncatedDeformation& def, const Trivializer& triv) {
  const std::size_t d = def.dim();
  if (def.order() < 1) throw Error(Errc::NotADeformation, "deformation has no first-order term");
  if (!residual_free_through(deformation_residuals(def), 1))
    throw Error(Errc::NotADeformation, "deformation equations fail through order 1");
  if (triv.psi1.rows() != d || triv.psi1.cols() != d || triv.x.size() != d)
    throw Error(Errc::DimensionMismatch, "trivializer shape");
  MrbComplex cx = regular_complex(def);
  ConeCochain pre{Cochain(d, 1, triv.psi1), Cochain(d, 0, Matrix::column_vector(triv.x))};
  ConeCochain image = cx.cone(pre);
  ConeCochain target{def.mu()[1], Cochain(d, 1, def.kk()[1])};
  if (!(image == target)) {
    DefectReport r;
    r.add("leibniz", {}, (image.leib - target.leib).values());
    r.add("operator", {}, (*image.op - *target.op).values());
    throw Error(Errc::NotACoboundaryWitness, "d^1 of the trivializer differs from (mu_1, K_1)", r);
  }
  Matrix psi1 = triv.psi1 + cx.delta(*pre.op).values();
  FormalIso iso = FormalIso::identity(d, def.order());
  iso.psi[1] = Rational(-1) * psi1;
  TruncatedDeformation out = apply_formal_iso(def, iso);
  ensure(out.mu()[1].is_zero() && out.kk()[1].is_zero(), "gauge step removes the first-order terms");
  return out;
}

}  // namespace mrb

#endif  // MRB_DEFORMATION_HPP
