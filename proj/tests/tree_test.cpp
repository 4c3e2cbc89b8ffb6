#include <gtest/gtest.h>

#include "rsalg/rules.hpp"
#include "rsalg/tree.hpp"

namespace rsalg {
namespace {

Tree T(const char* text) { return parse_tree(text, 2); }

const DegreeParams kParams = DegreeParams::defaults();

TEST(Tree, DefaultParamsAreTheShiftedWhiteNoise) {
  EXPECT_EQ(kParams.alpha, Rational(-151, 100));
  EXPECT_EQ(kParams.d, 1);
  EXPECT_EQ(kParams.scaling, (std::vector<int>{2, 1}));
  EXPECT_EQ(kParams.malliavin_gain(), Rational(3, 2));
}

// alpha = -151/100, parabolic scaling; worked by hand.
TEST(Tree, DegreesOfSmallTrees) {
  struct Case {
    const char* tree;
    Rational deg0, deg1;
  };
  const std::vector<Case> cases{
      {"Xi0", Rational(-151, 100), Rational(-151, 100)},
      {"Xi1", Rational(-1, 100), Rational(-151, 100)},
      {"I[Xi0]", Rational(49, 100), Rational(49, 100)},
      {"I[Xi1]", Rational(199, 100), Rational(49, 100)},
      {"I_(0,1)[Xi0]", Rational(-51, 100), Rational(-51, 100)},
      {"I[Xi0]*I[Xi0]", Rational(49, 50), Rational(49, 50)},
      {"I[Xi0]*Xi0", Rational(-51, 50), Rational(-51, 50)},
      {"X^(1,0)", Rational(2), Rational(2)},
      {"X^(0,1)*I[Xi1]", Rational(299, 100), Rational(149, 100)},
      {"1", Rational(0), Rational(0)},
  };
  for (const auto& c : cases) {
    const Tree t = T(c.tree);
    EXPECT_EQ(degree(t, DegreeKind::Zero, kParams), c.deg0) << c.tree;
    EXPECT_EQ(degree(t, DegreeKind::One, kParams), c.deg1) << c.tree;
  }
}

TEST(Tree, CanonicalFormIgnoresFactorOrder) {
  EXPECT_EQ(T("Xi0*I[Xi0]"), T("I[Xi0]*Xi0"));
  EXPECT_EQ(T("I_(0,1)[Xi0]*I[Xi0]"), T("I[Xi0]*I_(0,1)[Xi0]"));
  EXPECT_EQ(T("I[I[Xi0]*I_(0,1)[Xi0]]*Xi0"), T("Xi0*I[I_(0,1)[Xi0]*I[Xi0]]"));
  EXPECT_NE(T("I[Xi0]"), T("I[Xi1]"));
  EXPECT_NE(T("I[Xi0]"), T("I_(0,1)[Xi0]"));
}

TEST(Tree, Counts) {
  const Tree t = T("I[I[Xi0]*Xi1]*I_(0,1)[Xi0]");
  EXPECT_EQ(t.noise_count(), 3);
  EXPECT_EQ(t.xi1_count(), 1);
  EXPECT_EQ(t.edge_count(), 3);
  EXPECT_EQ(t.total_edge_index(), (MultiIndex{0, 1}));
  EXPECT_FALSE(t.is_planted());
  EXPECT_TRUE(T("I[Xi0]").is_planted());
  EXPECT_FALSE(T("X^(0,1)*I[Xi0]").is_planted());
  EXPECT_TRUE(T("X^(1,2)").is_monomial());
  EXPECT_TRUE(T("1").is_one());
}

TEST(Tree, SymmetryFactors) {
  EXPECT_EQ(symmetry_factor(T("Xi0")), 1);
  EXPECT_EQ(symmetry_factor(T("I[Xi0]*I[Xi0]")), 2);
  EXPECT_EQ(symmetry_factor(T("I[Xi0]*I[Xi1]")), 1);
  EXPECT_EQ(symmetry_factor(T("I[Xi0]*I_(0,1)[Xi0]")), 1);
  EXPECT_EQ(symmetry_factor(T("I[Xi0]*I[Xi0]*I[Xi0]")), 6);
  // 2 for swapping the branches, 2 inside each branch.
  EXPECT_EQ(symmetry_factor(T("I[I[Xi0]*I[Xi0]]*I[I[Xi0]*I[Xi0]]")), 8);
}

TEST(Tree, ProductsAndPlanting) {
  EXPECT_EQ(product(T("I[Xi0]"), T("Xi0")), T("I[Xi0]*Xi0"));
  EXPECT_EQ(product(T("1"), T("I[Xi0]")), T("I[Xi0]"));
  EXPECT_EQ(product(T("X^(0,1)"), T("X^(1,0)*Xi0")), T("X^(1,1)*Xi0"));
  EXPECT_THROW(product(T("Xi0"), T("Xi1*I[Xi0]")), NoiseProduct);
  EXPECT_EQ(plant(MultiIndex{0, 1}, T("Xi0")), T("I_(0,1)[Xi0]"));
  EXPECT_EQ(times_monomial(T("I[Xi0]"), MultiIndex{0, 2}), T("X^(0,2)*I[Xi0]"));
  EXPECT_EQ(strip_root_poly(T("X^(0,2)*I[X^(0,1)*Xi0]")), T("I[X^(0,1)*Xi0]"));
}

TEST(TreeIo, RejectsMalformedText) {
  for (const char* bad : {"", "I[Xi0", "I[Xi0]]", "Q", "I_(0)[Xi0]", "I_(0,1[Xi0]", "X^(0,-1)", "Xi0*Xi1", "I[Xi0]*"})
    EXPECT_THROW(T(bad), std::exception) << '"' << bad << '"';
}

TEST(TreeIo, ParseErrorReportsPosition) {
  try {
    T("I[Xi0]*Q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 7u);
  }
}

// Property: parse . serialize is the identity on every enumerated tree.
TEST(TreeIo, RoundTripOnEnumerations) {
  std::size_t n = 0;
  for (const char* rule : {"qua", "qua_c", "gkpz", "phi43"}) {
    const RuleSet rules = RuleSet::from_name(rule, 3, 7);
    for (const Tree& t : lift_T1(enumerate_T0(rules))) {
      const std::string text = serialize(t);
      const Tree back = parse_tree(text, rules.dim());
      ASSERT_EQ(back, t) << text;
      ASSERT_EQ(serialize(back), text);
      ++n;
    }
  }
  EXPECT_GT(n, 1000u);
}

TEST(TreeIo, RoundTripWithDecorations) {
  for (const char* text : {"X^(1,1)*I[X^(0,2)*Xi1]*I_(0,1)[Xi0]", "X^(0,1)", "1", "I_(1,0)[I[Xi0]*Xi0]"}) {
    const Tree t = T(text);
    EXPECT_EQ(parse_tree(serialize(t), 2), t) << text;
  }
}

}  // namespace
}  // namespace rsalg
