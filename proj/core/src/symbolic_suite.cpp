#include <unordered_map>

#include "rsalg/hopf.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"
#include "rsalg/suites.hpp"
#include "suite_support.hpp"

namespace rsalg {

namespace {

enum Id : std::size_t {
  kRoundtrip,
  kDerivativeCoaction,
  kCoactionTriangular,
  kDeltaHatFactor,
  kDeltaHatTriangular,
  kDeltaHatTrivial,
  kPrepTriangular,
  kPrepBasics,
  kPrepCoaction0,
  kPrepCoaction1,
  kPrepMalliavin,
  kPrepQ0,
  kPrepDeltaHat,
  kPrepShape,
  kClosure,
  kAssumption1,
  kCount
};

std::vector<IdentityResult> identity_table() {
  std::vector<IdentityResult> t(kCount);
  auto set = [&](Id i, const char* id, const char* text) {
    t[i].id = id;
    t[i].description = text;
    t[i].exact = true;
  };
  set(kRoundtrip, "roundtrip", "parse(serialize(t)) = t");
  set(kDerivativeCoaction, "derivative-coaction", "(D_p (x) Id) Delta_i = Delta_i D_p");
  set(kCoactionTriangular, "coaction-triangularity",
      "Delta_i t = t (x) 1 + terms whose left factor has smaller deg_i");
  set(kDeltaHatFactor, "delta-hat-factorisation", "hat-Delta_0 = (Id (x) hat-Gamma_0) Delta_0");
  set(kDeltaHatTriangular, "delta-hat-triangularity", "every left factor of hat-Delta_0 t has deg_1 >= deg_1(t)");
  set(kDeltaHatTrivial, "delta-hat-trivial", "hat-Delta_0 t = t (x) 1 for Xi1-free t");
  set(kPrepTriangular, "prep-triangularity", "R - Id lowers the noise count and does not lower deg_1");
  set(kPrepBasics, "prep-fixes-basics", "R fixes 1, X_j, Xi0, Xi1 and planted trees");
  set(kPrepCoaction0, "prep-coaction-0", "(R (x) Id) Delta_0 = Delta_0 R");
  set(kPrepCoaction1, "prep-coaction-1", "(R (x) Id) Delta_1 = Delta_1 R");
  set(kPrepMalliavin, "prep-malliavin", "R D_Xi = D_Xi R");
  set(kPrepQ0, "prep-Q0", "R Q_0 = Q_0 R");
  set(kPrepDeltaHat, "prep-delta-hat", "(R (x) Id) hat-Delta_0 = hat-Delta_0 R");
  set(kPrepShape, "prep-shape", "(R - Id) sends prod I(t_i) I_2(t) to products of Xi1-free I(.) factors");
  set(kClosure, "rule-closure", "R and the left factors of Delta_0 stay within the rule set");
  set(kAssumption1, "assumption1", "planted Malliavin branches I_a(D_Xi t') with deg_0 <= 0");
  t[kAssumption1].diagnostic = true;
  return t;
}

/// Derivative directions: time, first space direction, and its square.
std::vector<MultiIndex> derivative_directions(std::size_t dim) {
  const MultiIndex t = MultiIndex::unit(dim, 0), x = MultiIndex::unit(dim, 1);
  return {x, x + x, t};
}

bool has_second_derivative_edges(const RuleSet& rules) {
  if (rules.dim() < 2) return false;
  return rules.edge_allowed(MultiIndex::unit(rules.dim(), 1) + MultiIndex::unit(rules.dim(), 1));
}

void check_tree(const Tree& t, bool xi1_free, const Hopf& hopf, detail::Sheet& sheet) {
  const std::size_t dim = hopf.dim();
  const DegreeParams& p = hopf.params();
  const std::string key = t.key();

  {
    const std::string text = serialize(t);
    Tree back = t;
    bool ok = true;
    try {
      back = parse_tree(text, dim);
      ok = back == t && serialize(back) == text;
    } catch (const ParseError&) {
      ok = false;
    }
    sheet.exact(kRoundtrip, ok, key, "", [&] { return text; }, [&] { return serialize(back); });
  }

  for (DegreeKind i : {DegreeKind::Zero, DegreeKind::One}) {
    const std::string which = "i=" + std::to_string(index_of(i));
    const TensorElem& co = hopf.coaction(i, t);
    for (const MultiIndex& dir : derivative_directions(dim)) {
      // Left factors repeat across many terms; derive each once.
      std::unordered_map<std::string, LinComb> derived;
      const TensorElem lhs = map_left(co, [&](const Tree& s) -> const LinComb& {
        auto it = derived.find(s.key());
        if (it == derived.end()) it = derived.emplace(s.key(), derive(dir, s)).first;
        return it->second;
      });
      const TensorElem rhs = hopf.coaction(i, derive(dir, t));
      sheet.exact(kDerivativeCoaction, lhs == rhs, key, "p=" + dir.str() + " " + which,
                  [&] { return render(lhs); }, [&] { return render(rhs); });
    }

    const Rational deg = degree(t, i, p);
    bool ok = co.coeff({t, PlusMonomial::one(dim)}) == 1;
    std::string offending;
    for (const auto& [k, c] : co) {
      if (k.left == t && k.right.is_one()) continue;
      if (!(degree(k.left, i, p) < deg)) {
        ok = false;
        offending = render(k.left);
        break;
      }
    }
    sheet.exact(kCoactionTriangular, ok, key, which, [&] { return render(co); },
                [&] { return offending.empty() ? std::string("leading term t (x) 1") : "deg_i(" + offending + ")"; });
  }

  const TensorElem dh = hopf.delta_hat0(t);
  {
    const TensorElem lhs = map_right(hopf.coaction(DegreeKind::Zero, t),
                                     [&](const PlusMonomial& m) { return hopf.gamma_hat0(m); });
    sheet.exact(kDeltaHatFactor, lhs == dh, key, "", [&] { return render(dh); }, [&] { return render(lhs); });
  }
  {
    const Rational deg1 = degree(t, DegreeKind::One, p);
    std::string offending;
    for (const auto& [k, c] : dh)
      if (degree(k.left, DegreeKind::One, p) < deg1) {
        offending = render(k.left);
        break;
      }
    sheet.exact(kDeltaHatTriangular, offending.empty(), key, "", [&] { return render(dh); },
                [&] { return "deg_1(" + offending + ") < deg_1(t)"; });
  }
  if (xi1_free) {
    const TensorElem expect(TensorKey<Tree, PlusMonomial>{t, PlusMonomial::one(dim)});
    sheet.exact(kDeltaHatTrivial, dh == expect, key, "", [&] { return render(dh); },
                [&] { return render(expect); });
  }
}

void fold_axioms(const AxiomReport& rep, std::vector<IdentityResult>& out) {
  auto slot = [](const std::string& axiom) -> Id {
    if (axiom == "triangularity") return kPrepTriangular;
    if (axiom == "fixes-basics") return kPrepBasics;
    if (axiom == "R-Delta0") return kPrepCoaction0;
    if (axiom == "R-Delta1") return kPrepCoaction1;
    if (axiom == "R-DXi") return kPrepMalliavin;
    if (axiom == "R-Q0") return kPrepQ0;
    if (axiom == "R-DeltaHat0") return kPrepDeltaHat;
    return kPrepShape;
  };
  for (const auto& [axiom, n] : rep.checked) out[slot(axiom)].checked += n;
  // Several failures of one axiom on one tree count once.
  std::string last;
  for (const auto& f : rep.failures) {
    IdentityResult& r = out[slot(f.axiom)];
    const std::string tag = f.axiom + "|" + f.tree.key();
    if (tag != last) ++r.failed;
    last = tag;
    if (r.failures.size() < kMaxListedFailures) r.failures.push_back({f.tree.key(), "", f.lhs, f.rhs});
  }
}

}  // namespace

SuiteReport run_symbolic_suite(const RunConfig& cfg) {
  const RuleSet rules = cfg.rules();
  const DegreeParams params = cfg.params();
  const PrepMap R = cfg.prep_map();
  const Hopf hopf(params);

  const std::vector<Tree> t0 = enumerate_T0(rules);
  const std::vector<Tree> t1 = lift_T1(t0);

  SuiteReport rep;
  rep.suite = "symbolic";
  rep.settings = detail::rule_settings(cfg, params);
  rep.identities = identity_table();

  std::vector<detail::Sheet> sheets(t1.size(), detail::Sheet(kCount));
  detail::parallel_for(t1.size(), cfg.jobs, [&](std::size_t j) {
    check_tree(t1[j], t1[j].xi1_count() == 0, hopf, sheets[j]);
  });
  for (const auto& s : sheets) s.merge_into(rep.identities);

  fold_axioms(verify_axioms(R, t0, hopf), rep.identities);
  if (has_second_derivative_edges(rules)) {
    fold_axioms(verify_assumption2(R, t0), rep.identities);
  } else {
    rep.identities[kPrepShape].note = "not applicable: the rule set has no I_2 edges";
  }

  IdentityResult& closure = rep.identities[kClosure];
  closure.checked = t0.size();
  std::string last;
  for (const auto& issue : check_closure(rules, t0, R, hopf)) {
    if (issue.tree.key() != last) ++closure.failed;
    last = issue.tree.key();
    if (closure.failures.size() < kMaxListedFailures)
      closure.failures.push_back({issue.tree.key(), issue.map, "conforming image", render(issue.offending)});
  }

  IdentityResult& a1 = rep.identities[kAssumption1];
  const auto violations = check_assumption1(t0, params);
  a1.checked = t0.size();
  last.clear();
  for (const auto& v : violations) {
    if (v.tree.key() != last) ++a1.failed;
    last = v.tree.key();
    if (a1.failures.size() < kMaxListedFailures)
      a1.failures.push_back({v.tree.key(), "branch " + render(v.branch), "deg_0 = " + render(v.degree), "> 0"});
  }
  a1.note = std::to_string(violations.size()) + " violating branches";

  rep.counts = {{"trees_T0", t0.size()}, {"trees_T1", t1.size()}, {"assumption1_violations", violations.size()}};
  return rep;
}

}  // namespace rsalg
