#pragma once

#include <vector>

#include "rsalg/multi_index.hpp"

namespace rsalg {

/// Which of the two homogeneities a map uses. deg0 credits the perturbed
/// noise Xi1 with the Malliavin gain (d+2)/2, deg1 does not.
enum class DegreeKind : int { Zero = 0, One = 1 };

inline int index_of(DegreeKind k) { return static_cast<int>(k); }

/// Global configuration of the model space: noise regularity, dimension, scaling.
struct DegreeParams {
  Rational alpha;
  int d = 1;
  std::vector<int> scaling;

  /// alpha = -3/2 - 1/100, d = 1, parabolic scaling.
  static DegreeParams defaults();
  /// Parabolic scaling (2,1,...,1) in dimension d with the given alpha.
  static DegreeParams parabolic(int d, Rational alpha);

  std::size_t dim() const { return static_cast<std::size_t>(d) + 1; }
  /// (d+2)/2
  Rational malliavin_gain() const;
  long scaled(const MultiIndex& m) const { return m.scaled(scaling); }

  /// Throws std::invalid_argument on alpha >= 0, bad scaling or unsupported d.
  void validate() const;

  friend bool operator==(const DegreeParams&, const DegreeParams&) = default;
};

}  // namespace rsalg
