#include <cmath>

#include <gtest/gtest.h>

#include "rsalg/numeric_model.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"

namespace rsalg {
namespace {

constexpr DegreeKind kZero = DegreeKind::Zero;
constexpr DegreeKind kOne = DegreeKind::One;

Tree T(const char* text) { return parse_tree(text, 2); }

Real sup(const Field& f) {
  Real s = 0;
  for (Real v : f) s = std::max(s, std::abs(v));
  return s;
}

TEST(Grid, IndexingAndTaylorMonomials) {
  const Grid g(12, 8, 1);
  EXPECT_EQ(g.size(), 96u);
  for (std::size_t l = 0; l < g.size(); ++l) EXPECT_EQ(g.linear(g.point(l)), l);
  EXPECT_EQ(g.shifted(g.linear({11, 7}), {1, 1}), g.linear({0, 0}));
  EXPECT_EQ(g.shifted(g.linear({0, 0}), {-1, -9}), g.linear({11, 7}));
  // Literal coordinates: (y - x)^k / k! with y = (3/12, 1/8), x = (9/12, 6/8).
  EXPECT_NEAR(static_cast<double>(g.taylor_monomial({3, 1}, {9, 6}, MultiIndex{1, 2})), -0.5 * 0.390625 / 2, 1e-15);
  EXPECT_NEAR(static_cast<double>(g.weight()), 1.0 / 96, 1e-18);
}

// Property: the half-width m stencil is exact on polynomials of degree <= 2m
// away from the wrap, and not beyond.
TEST(Grid, CentralDifferenceExactnessOrder) {
  const Grid g(40, 40, 1);
  for (std::size_t axis : {0u, 1u})
    for (int m = 1; m <= 4; ++m)
      for (int k = 1; k <= 2 * m + 1; ++k) {
        Field f(g.size());
        for (std::size_t l = 0; l < g.size(); ++l) f[l] = std::pow(g.coord(g.point(l), axis) - Real(0.5), k);
        const Field df = central_difference(g, f, axis, m);
        Real err = 0;
        for (std::size_t l = 0; l < g.size(); ++l) {
          const Point p = g.point(l);
          if (p[axis] < m || p[axis] >= g.extent(axis) - m) continue;
          err = std::max(err, std::abs(df[l] - k * std::pow(g.coord(p, axis) - Real(0.5), k - 1)));
        }
        if (k <= 2 * m)
          EXPECT_LT(err, 1e-14) << "axis " << axis << " m " << m << " k " << k;
        else
          EXPECT_GT(err, 1e-12) << "axis " << axis << " m " << m << " k " << k;
      }
}

// deg_0 values by hand: I^2(Xi0) 249/100, I^3(Xi0) 449/100, I^2(Xi1) 399/100.
// Taylor order in space is ceil(deg) - 1 and needs half-width (order + 1) / 2.
TEST(Grid, ExactHalfWidth) {
  const DegreeParams p = DegreeParams::defaults();
  EXPECT_EQ(exact_half_width({T("Xi0")}, p), 1);
  EXPECT_EQ(exact_half_width({T("I[Xi0]")}, p), 1);
  EXPECT_EQ(exact_half_width({T("I[I[Xi0]]")}, p), 2);
  EXPECT_EQ(exact_half_width({T("I[Xi1]")}, p), 2);
  EXPECT_EQ(exact_half_width({T("Xi0"), T("I[I[Xi0]]")}, p), 2);
}

TEST(Noise, DeterministicAndSeeded) {
  const Grid g(16, 16, 1);
  EXPECT_EQ(NoisePair::trigonometric(g).xi, NoisePair::trigonometric(g).xi);
  EXPECT_EQ(NoisePair::mollified(g, 7).xi, NoisePair::mollified(g, 7).xi);
  EXPECT_NE(NoisePair::mollified(g, 7).xi, NoisePair::mollified(g, 8).xi);
  const NoisePair n = NoisePair::trigonometric(g);
  const NoisePair q = n.perturbed(2);
  for (std::size_t l = 0; l < g.size(); ++l) EXPECT_EQ(q.xi[l], n.xi[l] + 2 * n.dxi[l]);
}

class ModelTest : public testing::Test {
 protected:
  void SetUp() override {
    trees_ = lift_T1(enumerate_T0(RuleSet::from_name("gkpz", 2, 4)));
    auto kernels = std::make_shared<const KernelFamily>(grid_, 0.4, exact_half_width(trees_, hopf_.params()));
    model_ = std::make_unique<GridModel>(kernels, NoisePair::trigonometric(grid_), hopf_, prep_);
  }
  Grid grid_{24, 16, 1};
  Hopf hopf_{DegreeParams::defaults()};
  PrepMap prep_ = PrepMap::trivial();
  std::vector<Tree> trees_;
  std::unique_ptr<GridModel> model_;
  Point x_{6, 5}, y_{18, 11};
};

TEST_F(ModelTest, PreModelOfPlantedNoiseIsTheConvolution) {
  const Field want = model_->kernels().convolve(MultiIndex(2), model_->noise().xi);
  const Field got = model_->pre_model(T("I[Xi0]"));
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t l = 0; l < got.size(); ++l) EXPECT_NEAR(static_cast<double>(got[l]), static_cast<double>(want[l]), 1e-13);
  // Positive degree below 1: recentring only subtracts the value at x.
  const Field rec = model_->pi(kZero, x_, T("I[Xi0]"));
  const Real at_x = want[grid_.linear(x_)];
  for (std::size_t l = 0; l < rec.size(); ++l)
    EXPECT_NEAR(static_cast<double>(rec[l]), static_cast<double>(want[l] - at_x), 1e-13);
}

// f_x(X) = -x, so that (Pi (x) f_x) Delta X = y - x.
TEST_F(ModelTest, CharactersOnPolynomials) {
  EXPECT_NEAR(static_cast<double>(model_->f(x_, PlusMonomial::x(MultiIndex{0, 1}))),
              -static_cast<double>(grid_.coord(x_, 1)), 1e-15);
  EXPECT_EQ(model_->f(x_, PlusMonomial::one(2)), 1);
}

// Property: Pi_x t vanishes at x whenever deg t > 0.
TEST_F(ModelTest, PositiveDegreeVanishesAtBasePoint) {
  std::size_t n = 0;
  for (const auto& t : trees_)
    for (DegreeKind i : {kZero, kOne})
      for (Flavor fl : {Flavor::Hat, Flavor::Full}) {
        if (!(degree(t, i, hopf_.params()) > 0)) continue;
        const Field f = model_->eval(fl, i, x_, t);
        EXPECT_LE(std::abs(f[grid_.linear(x_)]), 1e-10 * std::max<Real>(1, sup(f))) << serialize(t);
        ++n;
      }
  EXPECT_GT(n, 10u);
}

// gamma via the factorwise shortcut agrees with the whole-monomial coproduct.
TEST_F(ModelTest, GammaShortcutMatchesDirect) {
  std::set<PlusMonomial> seen;
  for (const auto& t : trees_)
    for (DegreeKind i : {kZero, kOne})
      for (const auto& [k, c] : hopf_.coaction(i, t)) seen.insert(k.right);
  for (const auto& m : seen) {
    const DegreeKind i = !m.factors().empty() && m.factors()[0].kind == kOne ? kOne : kZero;
    const Real a = model_->gamma(i, y_, x_, m), b = model_->gamma_direct(i, y_, x_, m);
    EXPECT_LE(std::abs(a - b), 1e-10 * std::max<Real>(1, std::abs(a))) << render(m);
  }
}

// Pi_y Gamma_yx = Pi_x, checked on the whole field.
TEST_F(ModelTest, RecenteringOnWholeField) {
  for (const auto& t : trees_)
    for (DegreeKind i : {kZero, kOne}) {
      const Field lhs = model_->eval(Flavor::Full, i, x_, t);
      const Field rhs = model_->eval(Flavor::Full, i, y_, model_->Gamma(i, y_, x_, t));
      const Real tol = 1e-10 * std::max<Real>(1, sup(lhs));
      for (std::size_t l = 0; l < lhs.size(); ++l) ASSERT_LE(std::abs(lhs[l] - rhs[l]), tol) << serialize(t);
    }
}

TEST(Kernel, RejectsBadCutoff) {
  const Grid g(16, 16, 1);
  EXPECT_THROW(KernelFamily(g, -1.0), ConfigError);
}

TEST(Conversion, RationalsToWorkingPrecision) {
  EXPECT_EQ(to_real(Rational(1, 4)), Real(0.25));
  EXPECT_EQ(to_real(Rational(-3)), Real(-3));
  EXPECT_NEAR(static_cast<double>(to_real(Rational(1, 3))), 1.0 / 3, 1e-16);
}

}  // namespace
}  // namespace rsalg
