#include "rsalg/rules.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "rsalg/hopf.hpp"
#include "rsalg/prep.hpp"

namespace rsalg {

namespace {

struct Counts {
  int c0 = 0, c1 = 0, c2 = 0;
  int total() const { return c0 + c1 + c2; }
};

int edge_type(const MultiIndex& a) {
  if (a.is_zero()) return 0;
  if (a.dim() == 2 && a[0] == 0 && a[1] == 1) return 1;
  if (a.dim() == 2 && a[0] == 0 && a[1] == 2) return 2;
  return -1;
}

bool shape_ok(RuleName r, bool noise, const Counts& c) {
  switch (r) {
    case RuleName::Qua:
      return (noise && c.total() == 0) || (!noise && c.c2 == 1 && c.c1 == 0);
    case RuleName::QuaComplete:
      return shape_ok(RuleName::Qua, noise, c) || (!noise && c.c1 == 0 && c.c2 == 0);
    case RuleName::Gkpz:
      return (!noise && c.c2 == 0 && c.c1 <= 2) || (noise && c.c1 == 0 && c.c2 == 0);
    case RuleName::Phi43:
      return (noise && c.total() == 0) || (!noise && c.c1 == 0 && c.c2 == 0 && c.c0 >= 1 && c.c0 <= 3);
  }
  return false;
}

// Upper bounds on child counts that no admissible shape can exceed; used to prune.
Counts caps(RuleName r, bool noise) {
  const int inf = 1 << 20;
  switch (r) {
    case RuleName::Qua:
    case RuleName::QuaComplete:
      return noise ? Counts{} : Counts{inf, 0, 1};
    case RuleName::Gkpz:
      return noise ? Counts{inf, 0, 0} : Counts{inf, 2, 0};
    case RuleName::Phi43:
      return noise ? Counts{} : Counts{3, 0, 0};
  }
  return {};
}

struct Item {
  MultiIndex index;
  int type;
  Tree body;
  int edges;
  int noises;
};

class Enumerator {
 public:
  explicit Enumerator(const RuleSet& r) : rules_(r), dim_(r.dim()) {}

  const std::vector<Tree>& level(int e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    std::vector<Item> items;
    if (e >= 1) {
      const std::vector<Tree> bodies = level(e - 1);
      for (const auto& a : edge_types())
        for (const auto& b : bodies)
          if (b.noise_count() >= 1)
            items.push_back({a, edge_type(a), b, 1 + b.edge_count() + b.noise_count(), b.noise_count()});
    }
    std::set<Tree> found;
    for (bool noise : {false, true}) {
      // A noise counts as a leaf edge.
      const int n = rules_.max_noises - (noise ? 1 : 0);
      const int budget = e - (noise ? 1 : 0);
      if (n < 0 || budget < 0) continue;
      std::vector<Edge> chosen;
      Counts c;
      grow(items, 0, n, budget, noise, caps(rules_.name, noise), c, chosen, found);
    }
    return memo_[e] = std::vector<Tree>(found.begin(), found.end());
  }

 private:
  std::vector<MultiIndex> edge_types() const {
    std::vector<MultiIndex> out{MultiIndex(dim_)};
    if (rules_.name == RuleName::Gkpz) out.push_back(MultiIndex{0, 1});
    if (rules_.name == RuleName::Qua || rules_.name == RuleName::QuaComplete)
      out.push_back(MultiIndex{0, 2});
    return out;
  }

  void grow(const std::vector<Item>& items, std::size_t from, int noises, int edges, bool noise,
            const Counts& cap, Counts& c, std::vector<Edge>& chosen, std::set<Tree>& found) {
    if (shape_ok(rules_.name, noise, c)) {
      found.insert(Tree::make(MultiIndex(dim_), noise ? Noise::Xi0 : Noise::None, chosen));
      if (found.size() > rules_.cap)
        throw BoundsTooLarge("enumeration exceeds cap of " + std::to_string(rules_.cap) + " trees");
    }
    for (std::size_t j = from; j < items.size(); ++j) {
      const Item& it = items[j];
      if (it.edges > edges || it.noises > noises) continue;
      int& slot = it.type == 0 ? c.c0 : (it.type == 1 ? c.c1 : c.c2);
      const int limit = it.type == 0 ? cap.c0 : (it.type == 1 ? cap.c1 : cap.c2);
      if (slot >= limit) continue;
      ++slot;
      chosen.push_back(Edge{it.index, it.body});
      grow(items, j, noises - it.noises, edges - it.edges, noise, cap, c, chosen, found);
      chosen.pop_back();
      --slot;
    }
  }

  const RuleSet& rules_;
  std::size_t dim_;
  std::map<int, std::vector<Tree>> memo_;
};

}  // namespace

RuleSet RuleSet::from_name(std::string_view name, int max_noises, int max_edges) {
  RuleSet r;
  if (name == "qua")
    r.name = RuleName::Qua;
  else if (name == "qua_c" || name == "qua_complete")
    r.name = RuleName::QuaComplete;
  else if (name == "gkpz")
    r.name = RuleName::Gkpz;
  else if (name == "phi43")
    r.name = RuleName::Phi43;
  else
    throw ConfigError("unknown rule set '" + std::string(name) + "'");
  if (max_noises < 0 || max_edges < 0) throw ConfigError("enumeration bounds must be non-negative");
  r.max_noises = max_noises;
  r.max_edges = max_edges;
  return r;
}

std::string RuleSet::name_str() const {
  switch (name) {
    case RuleName::Qua: return "qua";
    case RuleName::QuaComplete: return "qua_c";
    case RuleName::Gkpz: return "gkpz";
    case RuleName::Phi43: return "phi43";
  }
  return "?";
}

DegreeParams RuleSet::default_params() const {
  if (name == RuleName::Phi43) return DegreeParams::parabolic(3, Rational(-5, 2) - Rational(1, 100));
  return DegreeParams::defaults();
}

std::size_t RuleSet::dim() const { return name == RuleName::Phi43 ? 4 : 2; }

bool RuleSet::edge_allowed(const MultiIndex& a) const {
  if (a.dim() != dim()) return false;
  const int t = edge_type(a);
  switch (name) {
    case RuleName::Qua:
    case RuleName::QuaComplete: return t == 0 || t == 2;
    case RuleName::Gkpz: return t == 0 || t == 1;
    case RuleName::Phi43: return t == 0;
  }
  return false;
}

bool RuleSet::node_allowed(const Tree& t) const {
  Counts c;
  for (const auto& e : t.children()) {
    if (!edge_allowed(e.index)) return false;
    const int k = edge_type(e.index);
    (k == 0 ? c.c0 : (k == 1 ? c.c1 : c.c2))++;
  }
  return shape_ok(name, t.noise() != Noise::None, c);
}

bool RuleSet::conforms(const Tree& t, bool cut_remnants) const {
  if (t.dim() != dim()) return false;
  if (!cut_remnants && !t.poly().is_zero()) return false;
  const bool empty = t.children().empty() && t.noise() == Noise::None;
  if (!(cut_remnants && empty) && !node_allowed(t)) return false;
  for (const auto& e : t.children()) {
    if (!cut_remnants && e.body.noise_count() == 0) return false;
    if (!conforms(e.body, cut_remnants)) return false;
  }
  return true;
}

std::vector<Tree> enumerate_T0(const RuleSet& rules) {
  Enumerator en(rules);
  return en.level(rules.max_edges);
}

std::vector<Tree> lift_T1(const std::vector<Tree>& t0) {
  std::set<Tree> out(t0.begin(), t0.end());
  for (const auto& t : t0)
    for (const auto& [s, c] : d_xi(t)) out.insert(s);
  return {out.begin(), out.end()};
}

std::vector<Assumption1Violation> check_assumption1(const std::vector<Tree>& t0,
                                                    const DegreeParams& params) {
  std::vector<Assumption1Violation> out;
  std::set<std::string> seen;
  std::function<void(const Tree&, const Tree&)> walk = [&](const Tree& root, const Tree& node) {
    for (const auto& e : node.children()) {
      if (e.body.noise_count() > e.body.xi1_count()) {
        const Tree branch = plant(e.index, e.body);
        const Rational deg = degree(branch, DegreeKind::Zero, params) + params.malliavin_gain();
        if (deg <= 0 && seen.insert(root.key() + "|" + branch.key()).second)
          out.push_back({root, branch, deg});
      }
      walk(root, e.body);
    }
  };
  for (const auto& t : t0) walk(t, t);
  return out;
}

Tree strip_all_poly(const Tree& t) {
  std::vector<Edge> ch;
  ch.reserve(t.children().size());
  for (const auto& e : t.children()) ch.push_back(Edge{e.index, strip_all_poly(e.body)});
  return Tree::make(MultiIndex(t.dim()), t.noise(), std::move(ch));
}

std::vector<ClosureIssue> check_closure(const RuleSet& rules, const std::vector<Tree>& t0,
                                        const PrepMap& prep, const Hopf& hopf) {
  std::vector<ClosureIssue> out;
  for (const auto& t : t0) {
    for (const auto& [s, c] : prep.apply(t))
      if (!rules.conforms(s)) out.push_back({t, "R", s});
    std::set<Tree> reported;
    for (const auto& [k, c] : hopf.coaction(DegreeKind::Zero, t)) {
      const Tree left = strip_all_poly(k.left);
      if (rules.conforms(left, true)) continue;
      if (reported.insert(left).second) out.push_back({t, "Delta0", k.left});
    }
  }
  return out;
}

}  // namespace rsalg
