#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace mrb;

namespace {

FormalIso random_iso(std::size_t dim, std::size_t order, fx::Rng& rng) {
  FormalIso iso = FormalIso::identity(dim, order);
  for (std::size_t i = 1; i <= order; ++i) iso.psi[i] = rng.matrix(dim, dim, 2);
  return iso;
}

std::vector<fx::Fixture> regular_fixtures() {
  std::vector<fx::Fixture> out;
  for (auto& f : fx::mrb_fixtures())
    if (f.rep == regular_rep(f.algebra, f.ctx)) out.push_back(f);
  return out;
}

TruncatedDeformation first_order(const fx::Fixture& f, const ConeCochain& c) {
  auto def = TruncatedDeformation::trivial(f.algebra, f.ctx, 1);
  std::vector<Cochain> mu = def.mu();
  std::vector<Matrix> kk = def.kk();
  mu[1] = c.leib;
  kk[1] = c.op->values();
  return TruncatedDeformation(f.algebra, f.ctx, mu, kk);
}

}  // namespace

TEST(Deformation, TrivialIsResidualFreeThroughOrderFour) {
  for (const auto& f : regular_fixtures()) {
    auto res = deformation_residuals(TruncatedDeformation::trivial(f.algebra, f.ctx, 4));
    ASSERT_EQ(res.size(), 5u);
    EXPECT_TRUE(residual_free_through(res, 4)) << f.name;
  }
}

TEST(Deformation, OrderZeroResidualsAreTheBaseDefects) {
  // [e1,e2] = e1, [e2,e1] = e2 is not Leibniz, and the identity is not modified Rota-Baxter of weight 3
  LeibnizAlgebra bad(2, {{0, 1, 0, 1}, {1, 0, 1, 1}});
  OperatorContext ctx{Matrix::identity(2), 3};
  auto res = deformation_residuals(TruncatedDeformation::trivial(bad, ctx, 1));
  EXPECT_EQ(res[0].leibniz, leibniz_defect(bad));
  EXPECT_EQ(res[0].op, mrb_defect(bad, ctx));
  EXPECT_FALSE(res[0].empty());
}

TEST(Deformation, ConstructorChecksOrderZero) {
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 1);
  std::vector<Matrix> kk = def.kk();
  kk[0] = Matrix::identity(3);
  try {
    TruncatedDeformation(fx::g3(), fx::k0(), def.mu(), kk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotADeformation);
  }
  std::vector<Matrix> shorter(kk.begin(), kk.end() - 1);
  EXPECT_THROW(TruncatedDeformation(fx::g3(), fx::k0(), def.mu(), shorter), Error);
}

// Order-1 residuals vanish exactly for 2-cocycles of the regular cone complex.
TEST(Deformation, FirstOrderResidualFreeIffCocycle) {
  fx::Rng rng(21);
  for (const auto& f : regular_fixtures()) {
    MrbComplex cx(f.algebra, f.ctx, f.rep);
    const std::size_t d = f.algebra.dim();
    auto kernel = kernel_basis(cx.cone_matrix(2));
    for (int t = 0; t < 4; ++t) {
      ConeCochain c = ConeCochain::from_flat(d, d, 2, fx::random_combination(kernel, cx.cone_dim(2), rng));
      auto def = first_order(f, c);
      EXPECT_TRUE(residual_free_through(deformation_residuals(def), 1)) << f.name;
      EXPECT_EQ(infinitesimal(def), c);
      EXPECT_TRUE(classify_cochain(cx, infinitesimal(def)).cocycle);

      ConeCochain noise = ConeCochain::from_flat(d, d, 2, rng.vector(cx.cone_dim(2)));
      if (classify_cochain(cx, noise).cocycle) continue;
      auto bad = first_order(f, noise);
      EXPECT_FALSE(residual_free_through(deformation_residuals(bad), 1)) << f.name;
      try {
        infinitesimal(bad);
        ADD_FAILURE();
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotADeformation);
      }
    }
  }
}

TEST(Deformation, IdentityIsoLeavesDeformationUnchanged) {
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 3);
  EXPECT_EQ(apply_formal_iso(def, FormalIso::identity(3, 3)), def);
  for (const auto& r : equivalence_residuals(def, def, FormalIso::identity(3, 3))) EXPECT_TRUE(r.empty());
}

TEST(Deformation, GaugeByElementaryMatrix) {
  // psi_1 = E11 on (G3, K0, 1): the result's infinitesimal is d^1(E11, 0), cohomologous to zero
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 2);
  FormalIso iso = FormalIso::identity(3, 2);
  iso.psi[1](0, 0) = 1;
  auto out = apply_formal_iso(def, iso);
  MrbComplex cx = regular_complex(def);
  ConeCochain expected = cx.cone(ConeCochain{Cochain(3, 1, iso.psi[1]), Cochain(3, 3, 0)});
  EXPECT_EQ(infinitesimal(out), expected);
  EXPECT_TRUE(classify_cochain(cx, infinitesimal(out)).coboundary);
  // mu'_1(e1, e1) = -psi_1 [e1,e1] + [psi_1 e1, e1] + [e1, psi_1 e1] = 2 e3
  EXPECT_EQ(out.mu()[1].at(0), (Vector{0, 0, 2}));
}

TEST(Deformation, EquivalentDeformationsDifferByCoboundary) {
  fx::Rng rng(3);
  for (const auto& f : regular_fixtures()) {
    const std::size_t d = f.algebra.dim();
    MrbComplex cx(f.algebra, f.ctx, f.rep);
    auto base = apply_formal_iso(TruncatedDeformation::trivial(f.algebra, f.ctx, 3), random_iso(d, 3, rng));
    ASSERT_TRUE(residual_free_through(deformation_residuals(base), 3)) << f.name;
    for (int t = 0; t < 3; ++t) {
      FormalIso iso = random_iso(d, 3, rng);
      auto moved = apply_formal_iso(base, iso);
      EXPECT_TRUE(residual_free_through(deformation_residuals(moved), 3)) << f.name;
      for (const auto& r : equivalence_residuals(base, moved, iso)) EXPECT_TRUE(r.empty()) << f.name;
      ConeCochain diff{infinitesimal(moved).leib - infinitesimal(base).leib,
                       *infinitesimal(moved).op - *infinitesimal(base).op};
      EXPECT_EQ(diff, cx.cone(ConeCochain{Cochain(d, 1, iso.psi[1]), Cochain(d, d, 0)})) << f.name;
    }
  }
}

TEST(Deformation, InverseSeriesUndoesIso) {
  fx::Rng rng(8);
  auto def = apply_formal_iso(TruncatedDeformation::trivial(fx::r2(), {Matrix{{0, 1}, {-1, 0}}, 1}, 3),
                              random_iso(2, 3, rng));
  FormalIso iso = random_iso(2, 3, rng);
  FormalIso inv{detail::inverse_series(iso)};
  EXPECT_EQ(apply_formal_iso(apply_formal_iso(def, iso), inv), def);
}

TEST(Deformation, WrongIsoLeavesResiduals) {
  fx::Rng rng(9);
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 2);
  FormalIso iso = random_iso(3, 2, rng);
  auto moved = apply_formal_iso(def, iso);
  auto res = equivalence_residuals(def, moved, FormalIso::identity(3, 2));
  EXPECT_TRUE(res[0].empty());
  EXPECT_FALSE(res[1].empty());
}

TEST(Deformation, OrderMismatch) {
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 2);
  try {
    apply_formal_iso(def, FormalIso::identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OrderMismatch);
  }
  EXPECT_THROW(equivalence_residuals(def, TruncatedDeformation::trivial(fx::g3(), fx::k0(), 3),
                                     FormalIso::identity(3, 2)),
               Error);
}

TEST(Deformation, GaugeStepOfTrivialWithZeroTrivializer) {
  auto def = TruncatedDeformation::trivial(fx::g3(), fx::k0(), 2);
  EXPECT_EQ(gauge_step(def, {Matrix(3, 3), Vector(3)}), def);
}

TEST(Deformation, GaugeStepInvertsKnownGauge) {
  fx::Rng rng(13);
  for (const auto& f : regular_fixtures()) {
    const std::size_t d = f.algebra.dim();
    FormalIso iso = random_iso(d, 2, rng);
    auto def = apply_formal_iso(TruncatedDeformation::trivial(f.algebra, f.ctx, 2), iso);
    auto out = gauge_step(def, {iso.psi[1], Vector(d)});
    EXPECT_TRUE(out.mu()[1].is_zero() && out.kk()[1].is_zero()) << f.name;
    EXPECT_TRUE(residual_free_through(deformation_residuals(out), 2)) << f.name;
  }
}

// On r2 with K = [[0,1],[-1,0]], weight 1, H^2 of the cone complex is zero:
// every residual-free first-order deformation is gauged away.
TEST(Deformation, RigidInstanceGaugesEveryFirstOrderDeformation) {
  fx::Fixture f{"r2", fx::r2(), {Matrix{{0, 1}, {-1, 0}}, 1}, {}};
  f.rep = regular_rep(f.algebra, f.ctx);
  MrbComplex cx(f.algebra, f.ctx, f.rep);
  CohomologyOptions opt;
  opt.max_degree = 2;
  ASSERT_EQ(cohomology_dimensions(cx, opt).h(ComplexKind::Cone, 2), 0u);
  auto kernel = kernel_basis(cx.cone_matrix(2));
  ASSERT_FALSE(kernel.empty());
  fx::Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    ConeCochain c = ConeCochain::from_flat(2, 2, 2, fx::random_combination(kernel, cx.cone_dim(2), rng));
    auto def = first_order(f, c);
    auto triv = find_trivializer(def);
    ASSERT_TRUE(triv);
    auto out = gauge_step(def, *triv);
    EXPECT_TRUE(out.mu()[1].is_zero());
    EXPECT_TRUE(out.kk()[1].is_zero());
    EXPECT_TRUE(residual_free_through(deformation_residuals(out), 1));
  }
}

TEST(Deformation, GaugeStepRejectsWrongWitness) {
  fx::Rng rng(19);
  auto def = apply_formal_iso(TruncatedDeformation::trivial(fx::g3(), fx::k0(), 1), random_iso(3, 1, rng));
  try {
    gauge_step(def, {Matrix(3, 3), Vector(3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotACoboundaryWitness);
    EXPECT_FALSE(e.report().empty());
  }
}

TEST(Deformation, NoTrivializerForNonTrivialClass) {
  // (G3, K0, 1) has H^2 = 3: a cocycle outside the coboundaries has no trivializer
  fx::Fixture f = fx::mrb_fixtures().front();
  MrbComplex cx(f.algebra, f.ctx, f.rep);
  CohomologyOptions opt;
  opt.max_degree = 2;
  opt.representatives = true;
  auto reps = cohomology_dimensions(cx, opt).table(ComplexKind::Cone)[2].representatives;
  ASSERT_EQ(reps.size(), 3u);
  auto def = first_order(f, ConeCochain::from_flat(3, 3, 2, reps[0]));
  EXPECT_FALSE(find_trivializer(def));
}
