#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <array>
#include <map>

using namespace mrb;

namespace {

struct Expected {
  std::array<std::size_t, 4> leibniz, op, cone;
};

// Frozen from tests/oracles/cohomology_oracle.py (independent sympy rank
// computation written from the coboundary formulas).
const std::map<std::string, Expected>& expected() {
  static const std::map<std::string, Expected> table{
      {"g3_k0_w1", {{2, 4, 8, 16}, {2, 4, 8, 16}, {0, 3, 3, 3}}},
      {"g3_ka_w4", {{2, 4, 8, 16}, {2, 4, 8, 16}, {0, 2, 2, 0}}},
      {"g3_kb_w0", {{2, 4, 8, 16}, {2, 5, 15, 45}, {0, 2, 3, 9}}},
      {"r2_rot_w1", {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}},
      {"zero1_w0", {{1, 1, 1, 1}, {1, 1, 1, 1}, {0, 1, 2, 2}}},
      {"g3_k0_w1_trivial_kv2", {{1, 2, 4, 8}, {1, 2, 4, 8}, {0, 0, 0, 0}}},
  };
  return table;
}

// Differential matrices of one fixture, degree 0..4 where needed.
struct Mats {
  std::vector<Matrix> delta, partial, phi, cone;
  CohomologyReport report;
};

const Mats& mats(const fx::Fixture& f) {
  static std::map<std::string, Mats> cache;
  auto it = cache.find(f.name);
  if (it != cache.end()) return it->second;
  MrbComplex cx(f.algebra, f.ctx, f.rep);
  Mats m;
  for (std::size_t n = 0; n <= 3; ++n) {
    m.delta.push_back(cx.delta_matrix(n));
    m.partial.push_back(cx.partial_matrix(n));
    m.cone.push_back(cx.cone_matrix(n));
  }
  for (std::size_t n = 0; n <= 4; ++n) m.phi.push_back(cx.phi_matrix(n));
  m.report = cohomology_dimensions(cx);
  return cache.emplace(f.name, std::move(m)).first->second;
}

class PerFixture : public ::testing::TestWithParam<fx::Fixture> {};

std::string fixture_name(const ::testing::TestParamInfo<fx::Fixture>& info) { return info.param.name; }

}  // namespace

TEST_P(PerFixture, DimensionsMatchOracle) {
  const auto& f = GetParam();
  const Expected& e = expected().at(f.name);
  const auto& rep = mats(f).report;
  ASSERT_EQ(rep.max_degree, 3u);
  for (std::size_t n = 0; n <= 3; ++n) {
    EXPECT_EQ(rep.h(ComplexKind::Leibniz, n), e.leibniz[n]) << "n=" << n;
    EXPECT_EQ(rep.h(ComplexKind::Operator, n), e.op[n]) << "n=" << n;
    EXPECT_EQ(rep.h(ComplexKind::Cone, n), e.cone[n]) << "n=" << n;
  }
}

TEST_P(PerFixture, PhiIsAChainMap) {
  const auto& m = mats(GetParam());
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(m.phi[n + 1] * m.delta[n], m.partial[n] * m.phi[n]) << "n=" << n;
}

TEST_P(PerFixture, DifferentialsSquareToZero) {
  const auto& m = mats(GetParam());
  for (std::size_t n = 0; n + 1 <= 3; ++n) {
    EXPECT_TRUE((m.delta[n + 1] * m.delta[n]).is_zero()) << "n=" << n;
    EXPECT_TRUE((m.partial[n + 1] * m.partial[n]).is_zero()) << "n=" << n;
    EXPECT_TRUE((m.cone[n + 1] * m.cone[n]).is_zero()) << "n=" << n;
  }
}

TEST_P(PerFixture, PhiZeroIsIdentityAndConeH0Vanishes) {
  const auto& f = GetParam();
  const auto& m = mats(f);
  EXPECT_EQ(m.phi[0], Matrix::identity(f.rep.dim_v));
  EXPECT_EQ(m.report.h(ComplexKind::Cone, 0), 0u);
}

TEST_P(PerFixture, ConeBoundFromLongExactSequence) {
  const auto& rep = mats(GetParam()).report;
  for (std::size_t n = 0; n <= 3; ++n) {
    std::size_t cap = rep.h(ComplexKind::Leibniz, n) + (n > 0 ? rep.h(ComplexKind::Operator, n - 1) : 0);
    EXPECT_LE(rep.h(ComplexKind::Cone, n), cap) << "n=" << n;
  }
}

// dim H^n_cone = dim ker(Phi^n on H^n_Leib -> H^n_op) + dim coker(Phi^{n-1}: H^{n-1}_Leib -> H^{n-1}_op),
// computed from ranks of the separate complexes only.
TEST_P(PerFixture, ConeDimensionsFromExactSequence) {
  const auto& m = mats(GetParam());
  const auto& rep = m.report;
  auto cocycles = [&](const std::vector<Matrix>& d, std::size_t n) { return Matrix::from_columns(d[n].cols(), kernel_basis(d[n])); };
  auto image_rank_mod = [&](const Matrix& extra, const std::vector<Matrix>& d, std::size_t n) {
    // rank[extra | B^n] - rank B^n, with B^n = image of d^{n-1}
    if (n == 0) return rank(extra);
    return rank(hstack(extra, d[n - 1])) - rank(d[n - 1]);
  };
  for (std::size_t n = 0; n <= 3; ++n) {
    std::size_t h_leib = rep.h(ComplexKind::Leibniz, n);
    std::size_t phi_rank = h_leib == 0 ? 0 : image_rank_mod(m.phi[n] * cocycles(m.delta, n), m.partial, n);
    std::size_t kernel_part = h_leib - phi_rank;
    std::size_t coker_part = 0;
    if (n > 0) {
      std::size_t h_op = rep.h(ComplexKind::Operator, n - 1);
      std::size_t prev_rank = rep.h(ComplexKind::Leibniz, n - 1) == 0
                                  ? 0
                                  : image_rank_mod(m.phi[n - 1] * cocycles(m.delta, n - 1), m.partial, n - 1);
      coker_part = h_op - prev_rank;
    }
    EXPECT_EQ(rep.h(ComplexKind::Cone, n), kernel_part + coker_part) << "n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, PerFixture, ::testing::ValuesIn(fx::mrb_fixtures()), fixture_name);

TEST(Cohomology, DeltaZeroIsMinusRightAction) {
  Representation r = regular_rep(fx::g3());
  Cochain v = Cochain::from_flat(3, 3, 0, Vector{1, 0, 0});
  Cochain dv = apply_delta(fx::g3(), r, v);
  EXPECT_EQ(dv.at(0), (Vector{0, 0, -1}));  // -[e1, e1]
  EXPECT_TRUE(is_zero(dv.at(1)));
}

TEST(Cohomology, DeltaOneByHand) {
  // (delta f)(x, y) = rho^L(x) f(y) + rho^R(y) f(x) - f([x, y]); f = identity on G3
  Representation r = regular_rep(fx::g3());
  Cochain id(3, 1, Matrix::identity(3));
  Cochain df = apply_delta(fx::g3(), r, id);
  // (e1, e1): [e1,e1] + [e1,e1] - e3 = e3
  EXPECT_EQ(df.at(0), (Vector{0, 0, 1}));
  EXPECT_TRUE(is_zero(df.at(1)));
}

TEST(Cohomology, LeibnizOnlyWithoutOperator) {
  CohomologyOptions opt;
  opt.max_degree = 1;
  auto rep = leibniz_cohomology(fx::g3(), regular_rep(fx::g3()), opt);
  EXPECT_EQ(rep.h(ComplexKind::Leibniz, 0), 2u);
  EXPECT_EQ(rep.h(ComplexKind::Leibniz, 1), 4u);
  EXPECT_TRUE(rep.table(ComplexKind::Cone).empty());
}

TEST(Cohomology, BudgetAndDegreeBound) {
  CohomologyOptions opt;
  opt.max_degree = 4;
  try {
    leibniz_cohomology(fx::g3(), regular_rep(fx::g3()), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
  opt.max_degree = 3;
  opt.budget = 100;
  EXPECT_THROW(cohomology_dimensions(fx::g3(), fx::k0(), regular_rep(fx::g3(), fx::k0()), opt), Error);
}

TEST(Cohomology, RepresentativesSpanTheQuotient) {
  MrbComplex cx(fx::g3(), fx::k0(), regular_rep(fx::g3(), fx::k0()));
  CohomologyOptions opt;
  opt.max_degree = 2;
  opt.representatives = true;
  auto rep = cohomology_dimensions(cx, opt);
  const auto& row = rep.table(ComplexKind::Cone)[2];
  ASSERT_EQ(row.representatives.size(), row.cohomology_dim);
  std::vector<Vector> span;
  Matrix prev = cx.cone_matrix(1);
  for (std::size_t c = 0; c < prev.cols(); ++c) span.push_back(prev.column(c));
  std::size_t base = rank(prev);
  for (const auto& v : row.representatives) {
    auto cls = classify_cochain(cx, ConeCochain::from_flat(3, 3, 2, v));
    EXPECT_TRUE(cls.cocycle);
    EXPECT_FALSE(cls.coboundary);
    span.push_back(v);
  }
  EXPECT_EQ(rank(Matrix::from_columns(cx.cone_dim(2), span)), base + row.cohomology_dim);
}

TEST(Cohomology, ClassifyCoboundaryWithWitness) {
  MrbComplex cx(fx::g3(), fx::k0(), regular_rep(fx::g3(), fx::k0()));
  fx::Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    ConeCochain w{Cochain(3, 1, rng.matrix(3, 3)), Cochain(3, 0, rng.matrix(3, 1))};
    ConeCochain c = cx.cone(w);
    auto cls = classify_cochain(cx, c);
    EXPECT_TRUE(cls.cocycle);
    ASSERT_TRUE(cls.coboundary);
    EXPECT_EQ(cx.cone(*cls.witness), c);
    // folding the degree-0 part keeps the image
    Cochain gamma = absorb_degree_zero(cx, *cls.witness);
    EXPECT_EQ(cx.cone(ConeCochain{gamma, Cochain(3, 3, 0)}), c);
  }
}

TEST(Cohomology, ClassifyRejectsNonCocycle) {
  MrbComplex cx(fx::g3(), fx::k0(), regular_rep(fx::g3(), fx::k0()));
  ConeCochain c{Cochain(3, 3, 2), Cochain(3, 3, 1)};
  c.op->values()(0, 0) = 1;
  auto cls = classify_cochain(cx, c);
  EXPECT_FALSE(cls.cocycle);
  EXPECT_FALSE(cls.coboundary);
}

TEST(Cohomology, ComplexRequiresMrbData) {
  try {
    MrbComplex(fx::g3(), {Matrix::identity(3), 0}, regular_rep(fx::g3()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotModifiedRotaBaxter);
  }
}
