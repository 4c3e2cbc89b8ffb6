#include <gtest/gtest.h>

#include "rsalg/suites.hpp"
#include "rsalg/tree.hpp"

namespace rsalg {
namespace {

RunConfig small_symbolic(const char* rule) {
  RunConfig cfg;
  cfg.rule = rule;
  cfg.max_noises = 2;
  cfg.max_edges = 5;
  return cfg;
}

RunConfig small_numeric(const char* rule) {
  RunConfig cfg = small_symbolic(rule);
  cfg.max_edges = 4;
  cfg.grid_t = 24;
  cfg.grid_x = 16;
  cfg.base_points = 4;
  return cfg;
}

std::vector<std::string> failing(const SuiteReport& rep) {
  std::vector<std::string> out;
  for (const auto& r : rep.identities)
    if (!r.passed()) out.push_back(r.id);
  return out;
}

TEST(SymbolicSuite, SmallRunsPass) {
  for (const char* rule : {"qua", "gkpz", "phi43"}) {
    const SuiteReport rep = run_symbolic_suite(small_symbolic(rule));
    EXPECT_TRUE(rep.passed()) << rule << ": " << rep.summary();
    EXPECT_GT(rep.find("roundtrip")->checked, 0u);
  }
  RunConfig qc = small_symbolic("qua_c");
  qc.prep = "qua_c";
  qc.prep_c = Rational(-5, 2);
  EXPECT_TRUE(run_symbolic_suite(qc).passed());
}

TEST(SymbolicSuite, ReportIsIndependentOfThreadCount) {
  RunConfig a = small_symbolic("gkpz"), b = a;
  a.jobs = 1;
  b.jobs = 3;
  EXPECT_EQ(run_symbolic_suite(a).to_json(), run_symbolic_suite(b).to_json());
}

TEST(SymbolicSuite, AdversarialPreparationMapFails) {
  RunConfig cfg = small_symbolic("qua_c");
  cfg.prep = "adversarial";
  const SuiteReport rep = run_symbolic_suite(cfg);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.find("prep-triangularity")->passed());
  EXPECT_FALSE(rep.find("prep-triangularity")->failures.empty());
}

TEST(SymbolicSuite, Assumption1IsDiagnosticOnly) {
  const SuiteReport rep = run_symbolic_suite(small_symbolic("qua_c"));
  const IdentityResult* a1 = rep.find("assumption1");
  ASSERT_NE(a1, nullptr);
  EXPECT_TRUE(a1->diagnostic);
  EXPECT_GT(a1->failed, 0u);
  EXPECT_TRUE(rep.passed());
}

TEST(NumericSuite, SmallGkpzRunFailsOnlyAtRootNoise) {
  const SuiteReport rep = run_numeric_suite(small_numeric("gkpz"));
  for (const auto& id : failing(rep)) EXPECT_TRUE(id == "diagonal-identity" || id == "diagonal-identity-hat") << id;
  EXPECT_TRUE(rep.find("diagonal-identity-noise-free-root")->passed());
  EXPECT_GT(rep.find("diagonal-identity-root-defect")->checked, 0u);
  EXPECT_TRUE(rep.find("diagonal-identity-root-defect")->passed());
  for (const auto& f : rep.find("diagonal-identity")->failures)
    EXPECT_EQ(parse_tree(f.tree, 2).noise(), Noise::Xi0) << f.tree;
}

TEST(NumericSuite, QuasilinearConstantCancels) {
  RunConfig cfg = small_numeric("qua_c");
  cfg.max_edges = 5;  // the second-derivative shapes need five
  cfg.grid_x = 32;    // and room for the I_2 stencil away from the wrap
  cfg.prep = "qua_c";
  cfg.c_scan = {0, 1, 1000};
  const SuiteReport rep = run_numeric_suite(cfg);
  for (const char* id : {"renormalisation-free-diagonal[c=0]", "renormalisation-free-diagonal[c=1000]",
                         "second-derivative[c=1]", "c-invariance"}) {
    const IdentityResult* r = rep.find(id);
    ASSERT_NE(r, nullptr) << id;
    EXPECT_GT(r->checked, 0u) << id;
    EXPECT_TRUE(r->passed()) << id;
  }
}

TEST(NumericSuite, DeterministicAcrossThreadCounts) {
  RunConfig a = small_numeric("gkpz"), b = a;
  a.jobs = 1;
  b.jobs = 2;
  EXPECT_EQ(run_numeric_suite(a).to_json(), run_numeric_suite(b).to_json());
}

// Negative control: a half-width 1 stencil is not exact on the Taylor
// polynomials of these trees, so discrete and abstract derivatives disagree.
TEST(NumericSuite, TooNarrowStencilIsDetected) {
  RunConfig cfg = small_numeric("gkpz");
  cfg.stencil = 1;
  const SuiteReport rep = run_numeric_suite(cfg);
  EXPECT_FALSE(rep.find("derivative-commutation")->passed());
}

// Negative control: with no tolerance at all, roundoff alone fails something.
TEST(NumericSuite, ZeroToleranceFails) {
  RunConfig cfg = small_numeric("gkpz");
  cfg.tol = 0;
  cfg.abs_tol = 0;
  EXPECT_FALSE(run_numeric_suite(cfg).passed());
}

TEST(NumericSuite, RejectsTooManyBasePoints) {
  RunConfig cfg = small_numeric("gkpz");
  cfg.base_points = 99;
  EXPECT_THROW(run_numeric_suite(cfg), ConfigError);
}

TEST(Report, JsonAndSummaryShapes) {
  const SuiteReport rep = run_symbolic_suite(small_symbolic("phi43"));
  const std::string json = rep.to_json();
  EXPECT_NE(json.find("\"suite\": \"symbolic\""), std::string::npos);
  EXPECT_NE(json.find("\"passed\": true"), std::string::npos);
  EXPECT_EQ(json.back(), '\n');
  const std::string summary = rep.summary();
  EXPECT_EQ(summary.substr(summary.size() - 5), "PASS\n");
}

}  // namespace
}  // namespace rsalg
