#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsalg/algebra.hpp"

namespace rsalg {

class Hopf;

/// One root rewrite: a sub-product of root factors equal to `pattern` is
/// replaced by coefficient * replacement.
struct PrepRule {
  Tree pattern;
  Rational coefficient;
  Tree replacement;
};

/// Preparation map R = Id + sum of root-pattern extractions.
///
/// A pattern is a product of at least two planted factors whose bodies only
/// carry Xi0. It is matched against the root factors of a tree, so R fixes
/// 1, X^k, noises and planted trees by construction.
class PrepMap {
 public:
  PrepMap() = default;
  PrepMap(std::vector<PrepRule> rules, std::string name);

  static PrepMap trivial();
  /// I(Xi0) I_2(Xi0) -> c * 1.
  static PrepMap quasilinear(const Rational& c);
  /// Built-in preset by name: "trivial", "qua_c", "adversarial".
  static PrepMap preset(std::string_view name, const Rational& c = 1);
  /// Lines "pattern ; rational ; replacement"; '#' starts a comment.
  static PrepMap parse(std::string_view text, std::size_t dim, std::string name = "file");
  static PrepMap load(const std::string& path, std::size_t dim);

  const std::vector<PrepRule>& rules() const { return rules_; }
  const std::string& name() const { return name_; }
  bool is_trivial() const { return rules_.empty(); }

  LinComb apply(const Tree& t) const;
  LinComb apply(const LinComb& x) const;

 private:
  std::vector<PrepRule> rules_;
  std::string name_ = "trivial";
};

struct AxiomFailure {
  std::string axiom;
  Tree tree;
  std::string lhs;
  std::string rhs;
};

struct AxiomReport {
  /// Axiom name -> number of trees checked.
  std::vector<std::pair<std::string, std::size_t>> checked;
  std::vector<AxiomFailure> failures;
  bool ok() const { return failures.empty(); }
  bool ok(std::string_view axiom) const;
};

/// Checks the preparation-map axioms as exact identities on `t0` and its T1 lift:
/// "triangularity", "fixes-basics", "R-Delta0", "R-Delta1", "R-DXi", "R-Q0", "R-DeltaHat0".
AxiomReport verify_axioms(const PrepMap& R, const std::vector<Tree>& t0, const Hopf& hopf);

/// On every tree of the form prod I(tau_i) I_2(tau), (R - Id) must produce only
/// products of zero-index planted Xi1-free factors.
AxiomReport verify_assumption2(const PrepMap& R, const std::vector<Tree>& t0);

}  // namespace rsalg
