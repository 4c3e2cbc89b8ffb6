// Acceptance run: one pass/fail line per criterion.
//
// Exit status is 0 when every criterion passes. Without --strict it is also 0
// when the only failure is the known root-noise defect of the diagonal
// identity (see the criterion 3 detail line); anything else exits 1.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsalg/config.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"
#include "rsalg/suites.hpp"
#include "rsalg/tree.hpp"

namespace {

using namespace rsalg;

struct Verdict {
  bool pass = true;
  bool known_defect = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << s << " s";
  return out.str();
}

/// Appends "id k/n" for each requested identity; fails on a missing or failing one.
void require(const SuiteReport& rep, const std::vector<std::string>& ids, Verdict& v) {
  for (const auto& id : ids) {
    const IdentityResult* r = rep.find(id);
    if (!r || r->checked == 0) {
      v.pass = false;
      v.detail += " " + id + " missing;";
      continue;
    }
    if (!r->passed()) v.pass = false;
    v.detail += " " + id + " " + std::to_string(r->checked - r->failed) + "/" + std::to_string(r->checked) + ";";
  }
}

/// Every non-diagnostic identity other than `allowed` must pass.
std::vector<std::string> unexpected_failures(const SuiteReport& rep, const std::set<std::string>& allowed = {}) {
  std::vector<std::string> out;
  for (const auto& r : rep.identities)
    if (!r.passed() && !allowed.count(r.id)) out.push_back(r.id);
  return out;
}

void within_budget(double seconds, double budget, Verdict& v) {
  v.detail += " " + fmt_seconds(seconds) + " (budget " + fmt_seconds(budget) + ")";
  if (seconds > budget) v.pass = false;
}

RunConfig gkpz_symbolic() {
  RunConfig cfg;
  cfg.rule = "gkpz";
  cfg.alpha = Rational(-151, 100);
  cfg.max_noises = kSymbolicBounds.noises;
  cfg.max_edges = kSymbolicBounds.edges;
  cfg.prep = "trivial";
  return cfg;
}

RunConfig numeric(const std::string& rule, const std::string& prep) {
  RunConfig cfg;
  cfg.rule = rule;
  cfg.prep = prep;
  cfg.grid_t = 48;
  cfg.grid_x = 32;
  cfg.noise = "trigonometric";
  cfg.base_points = 8;
  cfg.tol = 1e-8;
  cfg.abs_tol = 1e-12;
  cfg.c_scan = {0, 1, 1000};
  return cfg;
}

struct Runs {
  SuiteReport symbolic_gkpz, numeric_gkpz;
};

Verdict criterion1(Runs& runs) {
  Verdict v;
  Clock clock;
  runs.symbolic_gkpz = run_symbolic_suite(gkpz_symbolic());
  const double s = clock.seconds();
  v.detail = "symbolic gkpz, exact:";
  require(runs.symbolic_gkpz,
          {"derivative-coaction", "coaction-triangularity", "delta-hat-factorisation", "delta-hat-triangularity",
           "delta-hat-trivial"},
          v);
  if (!unexpected_failures(runs.symbolic_gkpz).empty()) v.pass = false;
  within_budget(s, 60, v);
  return v;
}

Verdict criterion2() {
  RunConfig cfg;
  cfg.rule = "qua_c";
  cfg.prep = "qua_c";
  Verdict v;
  Clock clock;
  const SuiteReport rep = run_symbolic_suite(cfg);
  const double s = clock.seconds();
  v.detail = "symbolic qua_c with the qua_c preparation map, exact:";
  require(rep,
          {"prep-triangularity", "prep-coaction-0", "prep-coaction-1", "prep-malliavin", "prep-Q0", "prep-shape",
           "prep-delta-hat"},
          v);
  if (!unexpected_failures(rep).empty()) v.pass = false;
  within_budget(s, 60, v);
  return v;
}

Verdict criterion3(Runs& runs) {
  Verdict v;
  Clock clock;
  runs.numeric_gkpz = run_numeric_suite(numeric("gkpz", "trivial"));
  const double s = clock.seconds();
  const SuiteReport& rep = runs.numeric_gkpz;
  v.detail = "numeric gkpz 48x32, rel 1e-8:";
  require(rep,
          {"model-factorisation", "curtailment", "curtailment-hat", "malliavin-commutation",
           "malliavin-commutation-hat", "continuity", "diagonal-identity", "diagonal-identity-hat", "gamma-model",
           "planted-decomposition", "recentering", "recentering-hat"},
          v);
  within_budget(s, 300, v);

  // The diagonal identity fails exactly on trees with Xi0 at the root; the
  // residual is the root-noise term checked by diagonal-identity-root-defect.
  const auto others = unexpected_failures(rep, {"diagonal-identity", "diagonal-identity-hat"});
  const IdentityResult* clean = rep.find("diagonal-identity-noise-free-root");
  const IdentityResult* defect = rep.find("diagonal-identity-root-defect");
  if (!v.pass && others.empty() && s <= 300 && clean && clean->checked > 0 && clean->passed() && defect &&
      defect->checked > 0 && defect->passed()) {
    v.known_defect = true;
    v.detail += " | diagonal failures are confined to Xi0-rooted trees: noise-free-root " +
                std::to_string(clean->checked) + "/" + std::to_string(clean->checked) + ", root-defect " +
                std::to_string(defect->checked) + "/" + std::to_string(defect->checked);
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  Clock clock;
  const SuiteReport rep = run_numeric_suite(numeric("qua_c", "qua_c"));
  const double s = clock.seconds();
  v.detail = "numeric qua_c, c in {0, 1, 1000}:";
  require(rep,
          {"renormalisation-free-diagonal[c=0]", "renormalisation-free-diagonal[c=1]",
           "renormalisation-free-diagonal[c=1000]", "second-derivative[c=0]", "second-derivative[c=1]",
           "second-derivative[c=1000]", "c-invariance"},
          v);
  within_budget(s, 300, v);
  return v;
}

Verdict criterion5() {
  Verdict v;
  auto violations = [](const std::string& rule) {
    RunConfig cfg;
    cfg.rule = rule;
    return std::pair{check_assumption1(enumerate_T0(cfg.rules()), cfg.params()), cfg.params()};
  };
  for (const char* rule : {"gkpz", "phi43"}) {
    const auto n = violations(rule).first.size();
    v.detail += std::string(" ") + rule + " " + std::to_string(n) + " violations;";
    if (n != 0) v.pass = false;
  }
  const auto [qv, params] = violations("qua_c");
  // -kappa, with alpha = -3/2 - kappa.
  const Rational minus_kappa = params.alpha + Rational(3, 2);
  std::size_t at_kappa = 0;
  for (const auto& x : qv)
    if (x.degree == minus_kappa) ++at_kappa;
  v.detail += " qua_c " + std::to_string(qv.size()) + " violations, " + std::to_string(at_kappa) +
              " at degree " + render(minus_kappa);
  if (at_kappa == 0) v.pass = false;
  return v;
}

Verdict criterion6(const Runs& runs) {
  Verdict v;
  std::size_t trees = 0, bad = 0;
  for (const char* rule : {"qua", "qua_c", "gkpz", "phi43"}) {
    RunConfig cfg;
    cfg.rule = rule;
    const RuleSet rules = cfg.rules();
    for (const Tree& t : lift_T1(enumerate_T0(rules))) {
      ++trees;
      const std::string text = serialize(t);
      try {
        if (!(parse_tree(text, rules.dim()) == t)) ++bad;
      } catch (const std::exception&) {
        ++bad;
      }
    }
  }
  v.detail = "roundtrip " + std::to_string(trees - bad) + "/" + std::to_string(trees) + ";";
  if (bad != 0) v.pass = false;

  // Rerun with a different thread count; the reports must match byte for byte.
  RunConfig sym = gkpz_symbolic();
  sym.jobs = sym.jobs == 2 ? 1 : 2;
  const bool sym_same = run_symbolic_suite(sym).to_json() == runs.symbolic_gkpz.to_json();
  RunConfig num = numeric("gkpz", "trivial");
  num.jobs = num.jobs == 2 ? 1 : 2;
  const bool num_same = run_numeric_suite(num).to_json() == runs.numeric_gkpz.to_json();
  v.detail += std::string(" symbolic report ") + (sym_same ? "identical" : "differs") + "; numeric report " +
              (num_same ? "identical" : "differs");
  if (!sym_same || !num_same) v.pass = false;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one line per criterion."};
  bool strict = false;
  app.add_flag("--strict", strict, "exit 1 on any failing criterion, including the known diagonal defect");
  CLI11_PARSE(app, argc, argv);

  Runs runs;
  const std::vector<std::function<Verdict()>> criteria{
      [&] { return criterion1(runs); }, [] { return criterion2(); }, [&] { return criterion3(runs); },
      [] { return criterion4(); },      [] { return criterion5(); }, [&] { return criterion6(runs); }};

  bool all = true, only_known = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    const std::size_t lead = v.detail.find_first_not_of(' ');
    std::cout << "criterion " << i + 1 << "  " << (v.pass ? "PASS" : "FAIL") << "  "
              << (lead == std::string::npos ? "" : v.detail.substr(lead)) << '\n'
              << std::flush;
    if (!v.pass) {
      all = false;
      if (!v.known_defect) only_known = false;
    }
  }
  if (all) return 0;
  if (!strict && only_known) {
    std::cout << "only the known root-noise diagonal defect failed\n";
    return 0;
  }
  return 1;
}
