#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsalg/tree.hpp"

namespace rsalg {

class Hopf;
class PrepMap;

enum class RuleName { Qua, QuaComplete, Gkpz, Phi43 };

/// Node-shape grammar for one equation plus enumeration bounds.
///
/// Edge types are I (zero index), I_1 = I_(0,1) and I_2 = I_(0,2) in d = 1;
/// phi43 lives in d = 3 and only uses I.
struct RuleSet {
  RuleName name = RuleName::Gkpz;
  int max_noises = 3;
  int max_edges = 8;
  /// Enumeration aborts with BoundsTooLarge beyond this many trees.
  std::size_t cap = 250000;

  /// Accepts "qua", "qua_c" (or "qua_complete"), "gkpz", "phi43".
  static RuleSet from_name(std::string_view name, int max_noises, int max_edges);
  std::string name_str() const;

  /// The degree configuration the rule set is meant for.
  DegreeParams default_params() const;
  std::size_t dim() const;

  /// Whether the edge index is one of this rule set's kernel types.
  bool edge_allowed(const MultiIndex& a) const;
  /// Whether the root node (ignoring its X decoration) has an admissible shape.
  bool node_allowed(const Tree& t) const;
  /// Recursive shape check: every node admissible, every planted argument carries a noise.
  /// With cut_remnants, node decorations are ignored and nodes left empty by
  /// cutting branches are accepted anywhere (shapes seen in coaction left factors).
  bool conforms(const Tree& t, bool cut_remnants = false) const;
};

/// Every conforming tree with at most max_noises noises and at most max_edges
/// edges, sorted by canonical serialization, without duplicates. Both kernel
/// edges and noise leaves count as edges.
std::vector<Tree> enumerate_T0(const RuleSet& rules);

/// T0 together with every single Xi0 -> Xi1 replacement, sorted and deduplicated.
std::vector<Tree> lift_T1(const std::vector<Tree>& t0);

struct Assumption1Violation {
  Tree tree;
  /// The planted branch I_a(tau') whose Malliavin-derived version fails positivity.
  Tree branch;
  /// deg_0(I_a(D_Xi tau')).
  Rational degree;
};

/// Positivity of every planted Malliavin branch, at every node of every tree.
std::vector<Assumption1Violation> check_assumption1(const std::vector<Tree>& t0,
                                                    const DegreeParams& params);

struct ClosureIssue {
  Tree tree;
  /// "R" or "Delta0".
  std::string map;
  Tree offending;
};

/// R maps the enumerated trees to rule-conforming trees, and Delta_0 left
/// factors conform up to X decorations and fully cut nodes.
std::vector<ClosureIssue> check_closure(const RuleSet& rules, const std::vector<Tree>& t0,
                                        const PrepMap& prep, const Hopf& hopf);

/// Tree with every node decoration set to zero.
Tree strip_all_poly(const Tree& t);

}  // namespace rsalg
