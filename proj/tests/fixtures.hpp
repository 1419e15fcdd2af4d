#ifndef MRB_TESTS_FIXTURES_HPP
#define MRB_TESTS_FIXTURES_HPP

#include <mrb/mrb.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fx {

using namespace mrb;

/// [e1, e1] = e3 on a 3-dimensional space.
inline LeibnizAlgebra g3() { return LeibnizAlgebra(3, {{0, 0, 2, 1}}); }

/// The 2-dimensional non-abelian Lie algebra [e1, e2] = e2.
inline LeibnizAlgebra r2() { return LeibnizAlgebra(2, {{0, 1, 1, 1}, {1, 0, 1, -1}}); }

inline LeibnizAlgebra zero1() { return LeibnizAlgebra(1, {}); }

inline OperatorContext k0() { return {Matrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 1}; }

struct Fixture {
  std::string name;
  LeibnizAlgebra algebra;
  OperatorContext ctx;
  Representation rep;
};

inline Representation trivial_module(std::size_t dim, std::size_t dim_v, const Matrix& k_v) {
  return {dim_v, std::vector<Matrix>(dim, Matrix(dim_v, dim_v)), std::vector<Matrix>(dim, Matrix(dim_v, dim_v)), k_v};
}

/// MRB Leibniz algebras with a representation; dim <= 3, dimV <= 3, both
/// zero and nonzero weights.
inline std::vector<Fixture> mrb_fixtures() {
  std::vector<Fixture> out;
  auto add = [&](std::string name, LeibnizAlgebra a, OperatorContext ctx) {
    Representation r = regular_rep(a, ctx);
    out.push_back({std::move(name), std::move(a), std::move(ctx), std::move(r)});
  };
  add("g3_k0_w1", g3(), k0());
  add("g3_ka_w4", g3(), {Matrix{{2, 0, 0}, {1, 1, 0}, {1, 1, 0}}, 4});
  add("g3_kb_w0", g3(), {Matrix{{0, 0, 0}, {1, 1, 0}, {0, 1, 1}}, 0});
  add("r2_rot_w1", r2(), {Matrix{{0, 1}, {-1, 0}}, 1});
  add("zero1_w0", zero1(), {Matrix{{0}}, 0});
  out.push_back({"g3_k0_w1_trivial_kv2", g3(), k0(), trivial_module(3, 1, Matrix{{2}})});
  return out;
}

/// Deterministic small rationals for randomized checks.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}

  Rational small(int bound = 3) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, 2);
    Rational r(num(gen_), den(gen_));
    r.canonicalize();  // GMP compares only canonical values
    return r;
  }

  Matrix matrix(std::size_t rows, std::size_t cols, int bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = small(bound);
    return m;
  }

  Vector vector(std::size_t n, int bound = 3) {
    Vector v(n);
    for (auto& x : v) x = small(bound);
    return v;
  }

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

 private:
  std::mt19937 gen_;
};

/// A random combination of a kernel basis.
inline Vector random_combination(const std::vector<Vector>& basis, std::size_t n, Rng& rng) {
  Vector v(n);
  for (const auto& b : basis) axpy(v, rng.small(), b);
  return v;
}

}  // namespace fx

#endif  // MRB_TESTS_FIXTURES_HPP
