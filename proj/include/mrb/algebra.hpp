#ifndef MRB_ALGEBRA_HPP
#define MRB_ALGEBRA_HPP

#include <mrb/defect.hpp>
#include <mrb/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

namespace mrb {

/// [e_i, e_j] contains c * e_k (0-based indices).
struct StructureConstant {
  std::size_t i, j, k;
  Rational c;

  friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

/// Finite-dimensional algebra given by structure constants. The Leibniz
/// identity is not enforced here: leibniz_defect is the gatekeeper, so broken
/// candidates can be loaded and diagnosed.
class LeibnizAlgebra {
 public:
  LeibnizAlgebra() = default;

  /// Rejects out-of-range indices and repeated (i, j, k) keys. Zero
  /// coefficients are dropped and the list is kept sorted, so structurally
  /// equal algebras compare equal.
  LeibnizAlgebra(std::size_t dim, std::vector<StructureConstant> constants) : dim_(dim) {
    std::sort(constants.begin(), constants.end(), [](const auto& a, const auto& b) {
      return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    for (std::size_t n = 0; n < constants.size(); ++n) {
      const auto& s = constants[n];
      if (s.i >= dim || s.j >= dim || s.k >= dim)
        throw Error(Errc::IndexOutOfRange, "structure constant index exceeds algebra dimension " + std::to_string(dim));
      if (n > 0 && s.i == constants[n - 1].i && s.j == constants[n - 1].j && s.k == constants[n - 1].k)
        throw Error(Errc::DuplicateKey, "repeated structure constant (" + std::to_string(s.i + 1) + "," +
                                            std::to_string(s.j + 1) + "," + std::to_string(s.k + 1) + ")");
    }
    products_.assign(dim * dim, Vector(dim));
    for (auto& s : constants) {
      if (is_zero(s.c)) continue;
      products_[s.i * dim + s.j][s.k] = s.c;
      constants_.push_back(std::move(s));
    }
  }

  /// Algebra whose basis products are given densely: product(i, j) = [e_i, e_j].
  template <class F>
  static LeibnizAlgebra from_products(std::size_t dim, F&& product) {
    std::vector<StructureConstant> cs;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        Vector v = product(i, j);
        for (std::size_t k = 0; k < dim; ++k)
          if (!is_zero(v[k])) cs.push_back({i, j, k, v[k]});
      }
    return LeibnizAlgebra(dim, std::move(cs));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<StructureConstant>& structure_constants() const { return constants_; }

  const Vector& bracket(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (is_zero(y[j])) continue;
        axpy(out, x[i] * y[j], bracket(i, j));
      }
    }
    return out;
  }

  /// The bracket as a dim x dim^2 matrix (column i*dim + j holds [e_i, e_j]).
  Matrix bracket_matrix() const {
    Matrix m(dim_, dim_ * dim_);
    for (std::size_t c = 0; c < dim_ * dim_; ++c) m.set_column(c, products_[c]);
    return m;
  }

  friend bool operator==(const LeibnizAlgebra& a, const LeibnizAlgebra& b) {
    return a.dim_ == b.dim_ && a.constants_ == b.constants_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<StructureConstant> constants_;
  std::vector<Vector> products_;
};

/// A linear operator paired with a weight. The same type carries modified
/// Rota-Baxter operators (K) and plain Rota-Baxter operators (T).
struct OperatorContext {
  Matrix op;
  Rational weight;

  friend bool operator==(const OperatorContext&, const OperatorContext&) = default;
};

inline void check_operator_shape(const LeibnizAlgebra& a, const OperatorContext& ctx) {
  if (ctx.op.rows() != a.dim() || ctx.op.cols() != a.dim())
    throw Error(Errc::DimensionMismatch, "operator is " + std::to_string(ctx.op.rows()) + "x" +
                                             std::to_string(ctx.op.cols()) + ", algebra has dimension " +
                                             std::to_string(a.dim()));
}

}  // namespace mrb

#endif  // MRB_ALGEBRA_HPP
