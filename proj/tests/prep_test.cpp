#include <gtest/gtest.h>

#include "rsalg/hopf.hpp"
#include "rsalg/prep.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"

namespace rsalg {
namespace {

Tree T(const char* text) { return parse_tree(text, 2); }

std::string preset_path(const char* name) { return std::string(RSALG_DATA_DIR) + "/presets/" + name + ".prep"; }

bool same_rules(const PrepMap& a, const PrepMap& b) {
  if (a.rules().size() != b.rules().size()) return false;
  for (std::size_t j = 0; j < a.rules().size(); ++j) {
    const PrepRule &x = a.rules()[j], &y = b.rules()[j];
    if (!(x.pattern == y.pattern && x.coefficient == y.coefficient && x.replacement == y.replacement)) return false;
  }
  return true;
}

TEST(Prep, ShippedFilesMatchBuiltInPresets) {
  for (const char* name : {"trivial", "qua_c", "adversarial"})
    EXPECT_TRUE(same_rules(PrepMap::load(preset_path(name), 2), PrepMap::preset(name))) << name;
}

TEST(Prep, QuasilinearExtraction) {
  const PrepMap R = PrepMap::quasilinear(Rational(7, 3));
  const LinComb img = R.apply(T("I[Xi0]*I_(0,2)[Xi0]"));
  EXPECT_EQ(img.coeff(T("I[Xi0]*I_(0,2)[Xi0]")), 1);
  EXPECT_EQ(img.coeff(Tree::one(2)), Rational(7, 3));
  EXPECT_EQ(img.size(), 2u);
  // Inside a larger root product, once per choice of the I(Xi0) factor.
  const LinComb big = R.apply(T("I[Xi0]*I[Xi0]*I_(0,2)[Xi0]"));
  EXPECT_EQ(big.coeff(T("I[Xi0]")), Rational(14, 3));
  // Only at the root.
  EXPECT_EQ(R.apply(T("I[I[Xi0]*I_(0,2)[Xi0]]")), LinComb(T("I[I[Xi0]*I_(0,2)[Xi0]]")));
  // No match on Xi1 bodies.
  EXPECT_EQ(R.apply(T("I[Xi1]*I_(0,2)[Xi0]")), LinComb(T("I[Xi1]*I_(0,2)[Xi0]")));
}

TEST(Prep, FixesBasicTrees) {
  const PrepMap R = PrepMap::quasilinear(5);
  for (const char* t : {"1", "X^(0,1)", "Xi0", "Xi1", "I_(0,2)[Xi0]", "I[I[Xi0]*I_(0,2)[Xi0]]"})
    EXPECT_EQ(R.apply(T(t)), LinComb(T(t))) << t;
}

TEST(Prep, ParseErrors) {
  EXPECT_THROW(PrepMap::parse("I[Xi0] ; 1", 2), std::exception);
  EXPECT_THROW(PrepMap::parse("I[Xi0]*I[Xi0] ; x ; 1", 2), std::exception);
  EXPECT_THROW(PrepMap::parse("I[Xi0 ; 1 ; 1", 2), std::exception);
  EXPECT_THROW(PrepMap::load("/nonexistent.prep", 2), std::exception);
  EXPECT_TRUE(PrepMap::parse("# only a comment\n\n", 2).is_trivial());
}

// The axioms hold for the shipped quasilinear map on every enumerated tree,
// for several values of the constant.
TEST(Prep, AxiomsHoldForQuasilinearPreset) {
  const RuleSet rules = RuleSet::from_name("qua_c", 2, 6);
  const Hopf hopf(rules.default_params());
  const auto t0 = enumerate_T0(rules);
  for (const Rational& c : {Rational(0), Rational(1), Rational(-3, 7), Rational(1000)}) {
    const PrepMap R = PrepMap::quasilinear(c);
    const AxiomReport rep = verify_axioms(R, t0, hopf);
    EXPECT_TRUE(rep.ok()) << "c=" << render(c) << " " << rep.failures.front().axiom;
    EXPECT_TRUE(verify_assumption2(R, t0).ok());
    EXPECT_TRUE(check_closure(rules, t0, R, hopf).empty());
  }
}

// Negative control: a replacement that keeps a noise breaks triangularity.
TEST(Prep, AdversarialPresetIsCaught) {
  const RuleSet rules = RuleSet::from_name("qua_c", 2, 5);
  const Hopf hopf(rules.default_params());
  const auto t0 = enumerate_T0(rules);
  const PrepMap R = PrepMap::preset("adversarial");
  const AxiomReport rep = verify_axioms(R, t0, hopf);
  EXPECT_FALSE(rep.ok("triangularity"));
  EXPECT_FALSE(verify_assumption2(R, t0).ok());
}

TEST(Prep, UnknownPresetIsAConfigError) { EXPECT_THROW(PrepMap::preset("bphz"), ConfigError); }

}  // namespace
}  // namespace rsalg
