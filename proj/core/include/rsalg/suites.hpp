#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsalg/config.hpp"

namespace rsalg {

/// One failing case, with both sides rendered.
struct CaseFailure {
  std::string tree;
  /// Extra coordinates of the case: base points, derivative index, constant c.
  std::string context;
  std::string lhs;
  std::string rhs;
};

/// Aggregate outcome of one identity over every tree and base point it applies to.
struct IdentityResult {
  std::string id;
  std::string description;
  /// Exact rational comparison (symbolic) rather than floating point.
  bool exact = false;
  /// Reported for information; never fails the suite.
  bool diagnostic = false;
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Floating-point identities only. max_rel only counts points where the
  /// relative part of the tolerance is the binding one.
  double max_abs = 0;
  double max_rel = 0;
  /// Case with the largest max_rel (first in canonical order on ties).
  std::string worst;
  /// The first failures in canonical order.
  std::vector<CaseFailure> failures;
  std::string note;

  bool passed() const { return diagnostic || failed == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::vector<IdentityResult> identities;
  std::vector<std::string> notes;

  bool passed() const;
  const IdentityResult* find(std::string_view id) const;
  /// Deterministic JSON document; no timings or host data.
  std::string to_json() const;
  /// One line per identity plus a verdict line.
  std::string summary() const;
};

/// Exact identities of the structure maps and of the preparation map on the
/// configured enumeration. Throws BoundsTooLarge, ConfigError.
SuiteReport run_symbolic_suite(const RunConfig& cfg);

/// Floating-point identities of the grid models at the configured base points.
/// Throws BoundsTooLarge, ConfigError.
SuiteReport run_numeric_suite(const RunConfig& cfg);

/// Cap on listed failures per identity.
inline constexpr std::size_t kMaxListedFailures = 25;

}  // namespace rsalg
