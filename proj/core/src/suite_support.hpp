#pragma once

// Shared plumbing of the identity suites: a work-sharing loop and per-task
// tallies that merge in canonical order, so reports do not depend on the
// number of threads.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "rsalg/config.hpp"
#include "rsalg/grid.hpp"
#include "rsalg/suites.hpp"

namespace rsalg::detail {

/// Calls fn(0..n-1) on up to `jobs` threads. The exception of the lowest
/// failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Outcomes of one task, indexed like the suite's identity list.
class Sheet {
 public:
  explicit Sheet(std::size_t identities) : rows_(identities) {}

  /// Exact comparison. The renderers are only called on failure.
  void exact(std::size_t id, bool ok, const std::string& tree, const std::string& context,
             const std::function<std::string()>& lhs, const std::function<std::string()>& rhs);
  void exact_cases(std::size_t id, std::size_t cases);

  void value(std::size_t id, Real lhs, Real rhs, const Tolerance& tol, const std::string& tree,
             const std::string& context);
  /// Like value, but the relative tolerance applies to `scale` instead of max(|lhs|, |rhs|).
  void value_scaled(std::size_t id, Real lhs, Real rhs, Real scale, const Tolerance& tol,
                    const std::string& tree, const std::string& context);
  /// One case over several points; `points` selects indices (all if empty) and
  /// `locate` names an index in failure reports.
  void field(std::size_t id, const Field& lhs, const Field& rhs,
             const Tolerance& tol, const std::string& tree, const std::string& context,
             const std::vector<std::size_t>& points = {},
             const std::function<std::string(std::size_t)>& locate = nullptr);

  /// Folds this sheet into `out` (same indexing), preserving first-seen order.
  void merge_into(std::vector<IdentityResult>& out) const;

 private:
  struct Row {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double max_abs = 0;
    double max_rel = 0;
    std::string worst;
    std::vector<CaseFailure> failures;
  };
  struct PointCheck {
    bool ok;
    double abs;
    double rel;
  };
  static PointCheck check(Real a, Real b, Real scale, const Tolerance& tol);
  void record(std::size_t id, bool ok, double abs, double rel, const std::string& worst, CaseFailure failure);

  std::vector<Row> rows_;
};

std::string render_point(const std::vector<int>& p);

/// Settings common to both suites.
std::vector<std::pair<std::string, std::string>> rule_settings(const RunConfig& cfg, const DegreeParams& params);

}  // namespace rsalg::detail
