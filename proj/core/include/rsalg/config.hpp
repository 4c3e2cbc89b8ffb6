#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsalg/degree.hpp"
#include "rsalg/prep.hpp"
#include "rsalg/rules.hpp"

namespace rsalg {

/// Relative tolerance with an absolute floor: a and b agree when
/// |a - b| <= max(abs, rel * max(|a|, |b|)).
struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-12;
  bool accepts(double a, double b) const;
};

/// Everything a suite run depends on. Defaults reproduce the reference runs.
/// std::thread::hardware_concurrency(), at least 1.
unsigned default_jobs();

struct Bounds {
  int noises;
  int edges;
};
inline constexpr Bounds kSymbolicBounds{3, 8};
/// Grid runs stay small: trees planted beyond these bounds are too ill-conditioned
/// for pointwise comparison at the default tolerance.
inline constexpr Bounds kNumericBounds{2, 5};

struct RunConfig {
  std::string rule = "gkpz";
  std::optional<Rational> alpha;
  std::optional<int> d;
  std::vector<int> scaling;
  /// Enumeration bounds; unset means the suite default (kSymbolicBounds or kNumericBounds).
  std::optional<int> max_noises;
  std::optional<int> max_edges;

  /// Preset name ("trivial", "qua_c", "adversarial") or a rule file path.
  std::string prep = "trivial";
  Rational prep_c = 1;
  /// Constants swept by the numeric suite when the preset depends on c.
  std::vector<Rational> c_scan{0, 1, 1000};

  int grid_t = 48;
  int grid_x = 32;
  double cutoff = 0.4;
  /// Stencil half-width; 0 picks the smallest one that is exact on the checked trees.
  int stencil = 0;
  /// "trigonometric" or "mollified".
  std::string noise = "trigonometric";
  std::uint64_t seed = 1;
  int base_points = 8;

  double tol = 1e-8;
  /// Defaults to 1e-4 * tol.
  std::optional<double> abs_tol;
  /// Worker threads; reports do not depend on it. Defaults to the hardware concurrency.
  unsigned jobs = default_jobs();

  /// Applies one "key = value" setting; throws ConfigError on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  /// Reads '#'-commented "key = value" lines.
  static RunConfig load(const std::string& path);
  static RunConfig parse(std::string_view text);

  /// Copy with unset enumeration bounds filled from `b`.
  RunConfig with_default_bounds(Bounds b) const;
  int noise_bound() const { return max_noises.value_or(kSymbolicBounds.noises); }
  int edge_bound() const { return max_edges.value_or(kSymbolicBounds.edges); }

  RuleSet rules() const;
  DegreeParams params() const;
  /// The configured preparation map, with `c` substituted for presets that take one.
  PrepMap prep_map(const Rational& c) const;
  PrepMap prep_map() const { return prep_map(prep_c); }
  /// Whether the preparation map is the c-dependent preset.
  bool prep_depends_on_c() const { return prep == "qua_c"; }
  Tolerance tolerance() const;

 private:
  // alpha given as separate halves, in either order.
  std::optional<Integer> alpha_num_;
  std::optional<Integer> alpha_den_;
};

/// "p/q" or an integer; throws ConfigError.
Rational parse_rational(std::string_view text);
/// "48x32" -> {48, 32}; throws ConfigError.
std::pair<int, int> parse_grid(std::string_view text);

}  // namespace rsalg
