#ifndef MRB_COCHAIN_HPP
#define MRB_COCHAIN_HPP

#include <mrb/defect.hpp>
#include <mrb/matrix.hpp>
#include <mrb/multi_index.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mrb {

/// An element of C^n(g, V) = Hom(g^{(x)n}, V), stored as a dimV x d^n matrix
/// whose column at flat multi-index position J is f(e_{J_1}, ..., e_{J_n}).
/// Degree 0 is a single column (C^0 = V).
///
/// Flat cochain coordinates (used by every differential matrix) stack the
/// columns: entry (v, J) sits at J * dimV + v.
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t dim_g, std::size_t dim_v, std::size_t degree)
      : dim_g_(dim_g), degree_(degree), values_(dim_v, ipow(dim_g, degree)) {}
  Cochain(std::size_t dim_g, std::size_t degree, Matrix values)
      : dim_g_(dim_g), degree_(degree), values_(std::move(values)) {
    if (values_.cols() != ipow(dim_g, degree))
      throw Error(Errc::DimensionMismatch, "cochain of degree " + std::to_string(degree) + " on a " +
                                               std::to_string(dim_g) + "-dimensional algebra needs " +
                                               std::to_string(ipow(dim_g, degree)) + " columns");
  }

  static Cochain basis(std::size_t dim_g, std::size_t dim_v, std::size_t degree, std::size_t flat_position) {
    Cochain c(dim_g, dim_v, degree);
    c.values_(flat_position % dim_v, flat_position / dim_v) = 1;
    return c;
  }

  static Cochain from_flat(std::size_t dim_g, std::size_t dim_v, std::size_t degree, const Vector& flat) {
    Cochain c(dim_g, dim_v, degree);
    if (flat.size() != c.flat_size()) throw Error(Errc::DimensionMismatch, "flat cochain length");
    for (std::size_t p = 0; p < flat.size(); ++p) c.values_(p % dim_v, p / dim_v) = flat[p];
    return c;
  }

  std::size_t dim_g() const { return dim_g_; }
  std::size_t dim_v() const { return values_.rows(); }
  std::size_t degree() const { return degree_; }
  std::size_t flat_size() const { return values_.rows() * values_.cols(); }
  const Matrix& values() const { return values_; }
  Matrix& values() { return values_; }

  /// f(e_{J_1}, ..., e_{J_n}) for a flat tuple position J.
  Vector at(std::size_t flat_tuple) const { return values_.column(flat_tuple); }

  Vector flatten() const {
    Vector out(flat_size());
    for (std::size_t j = 0; j < values_.cols(); ++j)
      for (std::size_t v = 0; v < values_.rows(); ++v) out[j * values_.rows() + v] = values_(v, j);
    return out;
  }

  bool is_zero() const { return values_.is_zero(); }

  Cochain& operator+=(const Cochain& o) {
    values_ += o.values_;
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    values_ -= o.values_;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rational& s, Cochain a) {
    a.values_ *= s;
    return a;
  }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.dim_g_ == b.dim_g_ && a.degree_ == b.degree_ && a.values_ == b.values_;
  }

 private:
  std::size_t dim_g_ = 0;
  std::size_t degree_ = 0;
  Matrix values_;
};

/// Evaluates a cochain on arbitrary argument vectors by multilinear expansion.
/// Sparse arguments and sparse cochains (basis cochains in particular) are
/// both cheap: it walks whichever side has fewer nonzero terms.
class CochainEvaluator {
 public:
  explicit CochainEvaluator(const Cochain& f) : f_(f) {
    for (std::size_t j = 0; j < f.values().cols(); ++j)
      if (!f.values().column_is_zero(j)) nonzero_columns_.push_back(j);
  }

  Vector operator()(std::span<const Vector* const> args) const {
    const std::size_t n = f_.degree(), d = f_.dim_g();
    if (args.size() != n) throw Error(Errc::DimensionMismatch, "cochain evaluated on wrong number of arguments");
    Vector out(f_.dim_v());
    if (nonzero_columns_.empty()) return out;
    std::vector<std::vector<std::size_t>> support(n);
    std::size_t paths = 1;
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t i = 0; i < d; ++i)
        if (!mrb::is_zero((*args[t])[i])) support[t].push_back(i);
      paths *= support[t].size();
      if (paths == 0) return out;
    }
    if (nonzero_columns_.size() <= paths) {
      for (auto j : nonzero_columns_) {
        Rational coef = 1;
        std::size_t rest = j;
        for (std::size_t t = n; t-- > 0;) {
          const auto& a = (*args[t])[rest % d];
          rest /= d;
          if (mrb::is_zero(a)) {
            coef = 0;
            break;
          }
          coef *= a;
        }
        if (!mrb::is_zero(coef)) add_column(out, coef, j);
      }
    } else {
      walk(args, support, 0, 0, Rational(1), out);
    }
    return out;
  }

 private:
  void add_column(Vector& out, const Rational& coef, std::size_t j) const {
    for (std::size_t v = 0; v < out.size(); ++v) {
      const auto& x = f_.values()(v, j);
      if (!mrb::is_zero(x)) out[v] += coef * x;
    }
  }

  void walk(std::span<const Vector* const> args, const std::vector<std::vector<std::size_t>>& support, std::size_t t,
            std::size_t flat, const Rational& coef, Vector& out) const {
    if (t == args.size()) {
      add_column(out, coef, flat);
      return;
    }
    for (auto i : support[t]) walk(args, support, t + 1, flat * f_.dim_g() + i, coef * (*args[t])[i], out);
  }

  const Cochain& f_;
  std::vector<std::size_t> nonzero_columns_;
};

/// Element of C^n_cone = C^n(g, V) (+) C^{n-1}(g, V); the operator part is
/// absent in degree 0. Flat coordinates: the Leibniz part first.
struct ConeCochain {
  Cochain leib;
  std::optional<Cochain> op;

  std::size_t degree() const { return leib.degree(); }

  Vector flatten() const {
    Vector out = leib.flatten();
    if (op) {
      Vector o = op->flatten();
      out.insert(out.end(), o.begin(), o.end());
    }
    return out;
  }

  static ConeCochain from_flat(std::size_t dim_g, std::size_t dim_v, std::size_t degree, const Vector& flat) {
    const std::size_t leib_size = dim_v * ipow(dim_g, degree);
    const std::size_t op_size = degree == 0 ? 0 : dim_v * ipow(dim_g, degree - 1);
    if (flat.size() != leib_size + op_size) throw Error(Errc::DimensionMismatch, "flat cone cochain length");
    ConeCochain c;
    c.leib = Cochain::from_flat(dim_g, dim_v, degree, Vector(flat.begin(), flat.begin() + leib_size));
    if (degree > 0)
      c.op = Cochain::from_flat(dim_g, dim_v, degree - 1, Vector(flat.begin() + leib_size, flat.end()));
    return c;
  }

  friend bool operator==(const ConeCochain&, const ConeCochain&) = default;
};

}  // namespace mrb

#endif  // MRB_COCHAIN_HPP
