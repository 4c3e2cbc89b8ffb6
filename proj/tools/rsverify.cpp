// rsverify: enumeration, single-map queries and the identity suites.
//
// Exit status: 0 when everything checked passes, 1 on an identity failure,
// 2 on a configuration or parse error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rsalg/config.hpp"
#include "rsalg/errors.hpp"
#include "rsalg/hopf.hpp"
#include "rsalg/numeric_model.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"
#include "rsalg/suites.hpp"

namespace {

using namespace rsalg;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Settings collected from flags, applied on top of an optional config file
/// in command-line order.
struct Settings {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    return cfg;
  }
};

void add_setting(CLI::App* app, Settings& s, const std::string& flag, const std::string& key,
                 const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&s, key](const std::string& v) { s.overrides.emplace_back(key, v); }, help);
}

void add_rule_flags(CLI::App* app, Settings& s) {
  app->add_option("--config", s.config_path, "key = value config file, applied before flags");
  add_setting(app, s, "--rule", "rule", "rule set: qua, qua_c, gkpz, phi43");
  add_setting(app, s, "--alpha", "alpha", "noise regularity as P/Q");
  add_setting(app, s, "--max-noises", "max_noises", "enumeration bound on noises (default 3, numeric 2)");
  add_setting(app, s, "--max-edges", "max_edges", "enumeration bound on edges, noise leaves included (default 8, numeric 5)");
}

void add_prep_flags(CLI::App* app, Settings& s) {
  add_setting(app, s, "--prep", "prep", "preparation map: trivial, qua_c, adversarial or a rule file");
  add_setting(app, s, "--prep-c", "prep_c", "constant of the qua_c preset");
}

void add_suite_flags(CLI::App* app, Settings& s, std::string& report, bool numeric) {
  add_rule_flags(app, s);
  add_prep_flags(app, s);
  add_setting(app, s, "--jobs", "jobs", "worker threads");
  app->add_option("--report", report, "write the JSON report to PATH ('-' for stdout)");
  if (!numeric) return;
  add_setting(app, s, "--grid", "grid", "grid size TxX, e.g. 48x32");
  add_setting(app, s, "--tol", "tol", "relative tolerance");
  add_setting(app, s, "--abs-tol", "abs_tol", "absolute floor (default 1e-4 * tol)");
  add_setting(app, s, "--seed", "seed", "seed of the mollified noise");
  add_setting(app, s, "--noise", "noise", "trigonometric or mollified");
  add_setting(app, s, "--cutoff", "cutoff", "kernel cutoff radius");
  add_setting(app, s, "--stencil", "stencil", "half-width of the derivative stencil, or auto");
  add_setting(app, s, "--base-points", "base_points", "number of base points");
  add_setting(app, s, "--c-scan", "c_scan", "comma-separated constants for the qua_c preset");
}

int emit(const SuiteReport& rep, const std::string& report) {
  if (report == "-") {
    std::cout << rep.to_json();
  } else {
    std::cout << rep.summary();
    if (!report.empty()) {
      std::ofstream out(report);
      if (!out) throw ConfigError("cannot write report to '" + report + "'");
      out << rep.to_json();
    }
  }
  return rep.passed() ? 0 : kExitFailure;
}

DegreeKind which_kind(int which) {
  if (which != 0 && which != 1) throw ConfigError("--which must be 0 or 1");
  return which == 0 ? DegreeKind::Zero : DegreeKind::One;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks the algebraic identities of recentred models on decorated trees."};
  app.require_subcommand(1);

  Settings s;
  std::string tree_text, report, x_text, flavor = "full";
  int which = 0;
  bool lift = false;
  std::function<int()> action;

  auto* enumerate = app.add_subcommand("enumerate", "print the enumerated trees, one per line");
  add_rule_flags(enumerate, s);
  enumerate->add_flag("--lift", lift, "also include every single Xi0 -> Xi1 replacement");
  enumerate->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      std::vector<Tree> trees = enumerate_T0(cfg.rules());
      if (lift) trees = lift_T1(trees);
      for (const auto& t : trees) std::cout << render(t) << '\n';
      return 0;
    };
  });

  auto* coact = app.add_subcommand("coact", "print Delta_i of a tree");
  add_rule_flags(coact, s);
  coact->add_option("--which", which, "degree kind i (0 or 1)")->default_val(0);
  coact->add_option("--tree", tree_text, "tree in the text grammar")->required();
  coact->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      const Hopf hopf(cfg.params());
      std::cout << render(hopf.coaction(which_kind(which), parse_tree(tree_text, hopf.dim()))) << '\n';
      return 0;
    };
  });

  auto* dhat = app.add_subcommand("delta-hat", "print hat-Delta_0 of a tree");
  add_rule_flags(dhat, s);
  dhat->add_option("--tree", tree_text, "tree in the text grammar")->required();
  dhat->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      const Hopf hopf(cfg.params());
      std::cout << render(hopf.delta_hat0(parse_tree(tree_text, hopf.dim()))) << '\n';
      return 0;
    };
  });

  auto* dxi = app.add_subcommand("dxi", "print D_Xi of a tree");
  add_rule_flags(dxi, s);
  dxi->add_option("--tree", tree_text, "tree in the text grammar")->required();
  dxi->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      std::cout << render(d_xi(parse_tree(tree_text, cfg.params().dim()))) << '\n';
      return 0;
    };
  });

  auto* apply_r = app.add_subcommand("apply-r", "print R applied to a tree");
  add_rule_flags(apply_r, s);
  add_prep_flags(apply_r, s);
  apply_r->add_option("--tree", tree_text, "tree in the text grammar")->required();
  apply_r->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      std::cout << render(cfg.prep_map().apply(parse_tree(tree_text, cfg.params().dim()))) << '\n';
      return 0;
    };
  });

  auto* a1 = app.add_subcommand("assumption1", "list planted Malliavin branches with non-positive deg_0");
  add_rule_flags(a1, s);
  a1->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      const auto v = check_assumption1(enumerate_T0(cfg.rules()), cfg.params());
      for (const auto& x : v)
        std::cout << render(x.tree) << "  branch " << render(x.branch) << "  deg_0 " << render(x.degree) << '\n';
      std::cout << v.size() << " violation(s)\n";
      return 0;
    };
  });

  auto* closure = app.add_subcommand("closure", "check that R and Delta_0 stay within the rule set");
  add_rule_flags(closure, s);
  add_prep_flags(closure, s);
  closure->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      const Hopf hopf(cfg.params());
      const RuleSet rules = cfg.rules();
      const auto issues = check_closure(rules, enumerate_T0(rules), cfg.prep_map(), hopf);
      for (const auto& i : issues)
        std::cout << render(i.tree) << "  " << i.map << " -> " << render(i.offending) << '\n';
      std::cout << (issues.empty() ? "closed\n" : std::to_string(issues.size()) + " issue(s)\n");
      return issues.empty() ? 0 : kExitFailure;
    };
  });

  auto* symbolic = app.add_subcommand("symbolic", "run the exact symbolic identity suite");
  add_suite_flags(symbolic, s, report, false);
  symbolic->callback([&] { action = [&] { return emit(run_symbolic_suite(s.resolve()), report); }; });

  auto* numeric = app.add_subcommand("numeric", "run the grid identity suite");
  add_suite_flags(numeric, s, report, true);
  numeric->callback([&] { action = [&] { return emit(run_numeric_suite(s.resolve()), report); }; });

  auto* field = app.add_subcommand("field", "dump a model field Pi_x t as a flat row-major array");
  add_rule_flags(field, s);
  add_prep_flags(field, s);
  add_setting(field, s, "--grid", "grid", "grid size TxX");
  add_setting(field, s, "--noise", "noise", "trigonometric or mollified");
  add_setting(field, s, "--seed", "seed", "seed of the mollified noise");
  add_setting(field, s, "--cutoff", "cutoff", "kernel cutoff radius");
  add_setting(field, s, "--stencil", "stencil", "half-width of the derivative stencil, or auto");
  field->add_option("--tree", tree_text, "tree in the text grammar")->required();
  field->add_option("--which", which, "degree kind i (0 or 1)")->default_val(0);
  field->add_option("--x", x_text, "base point as comma-separated grid indices (default: origin)");
  field->add_option("--flavor", flavor, "full, hat or pre (the uncentred pre-model)")
      ->check(CLI::IsMember({"full", "hat", "pre"}));
  field->callback([&] {
    action = [&] {
      const RunConfig cfg = s.resolve();
      const DegreeParams params = cfg.params();
      const Hopf hopf(params);
      const PrepMap R = cfg.prep_map();
      const Grid g(cfg.grid_t, cfg.grid_x, params.d);
      const Tree t = parse_tree(tree_text, g.dim());
      const int half_width = cfg.stencil > 0 ? cfg.stencil : exact_half_width({t}, params);
      auto kernels = std::make_shared<const KernelFamily>(g, cfg.cutoff, half_width);
      GridModel M(kernels, cfg.noise == "mollified" ? NoisePair::mollified(g, cfg.seed) : NoisePair::trigonometric(g),
                  hopf, R);
      Point x{};
      if (!x_text.empty()) {
        std::size_t axis = 0, start = 0;
        while (start <= x_text.size()) {
          const std::size_t comma = std::min(x_text.find(',', start), x_text.size());
          if (axis >= g.dim()) throw ConfigError("--x has too many coordinates");
          x[axis] = std::stoi(x_text.substr(start, comma - start));
          if (x[axis] < 0 || x[axis] >= g.extent(axis)) throw ConfigError("--x lies outside the grid");
          ++axis;
          start = comma + 1;
        }
      }
      const Field f = flavor == "pre" ? M.pre_model(t)
                                      : M.eval(flavor == "hat" ? Flavor::Hat : Flavor::Full, which_kind(which), x, t);
      dump_field(std::cout, g, f);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
  } catch (const BoundsTooLarge& e) {
    std::cerr << "enumeration too large: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
  }
  return kExitUsage;
}
