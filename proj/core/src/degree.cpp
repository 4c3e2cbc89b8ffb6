#include "rsalg/degree.hpp"

#include <stdexcept>

namespace rsalg {

DegreeParams DegreeParams::defaults() { return parabolic(1, Rational(-3, 2) - Rational(1, 100)); }

DegreeParams DegreeParams::parabolic(int d, Rational alpha) {
  DegreeParams p;
  alpha.canonicalize();
  p.alpha = alpha;
  p.d = d;
  p.scaling.assign(static_cast<std::size_t>(d) + 1, 1);
  p.scaling[0] = 2;
  p.validate();
  return p;
}

Rational DegreeParams::malliavin_gain() const { return Rational(d + 2, 2); }

void DegreeParams::validate() const {
  if (d < 0 || static_cast<std::size_t>(d) + 1 > MultiIndex::kMaxDim)
    throw std::invalid_argument("DegreeParams: d must be in [0, 3]");
  if (alpha >= 0) throw std::invalid_argument("DegreeParams: alpha must be negative");
  if (scaling.size() != dim()) throw std::invalid_argument("DegreeParams: scaling has wrong length");
  for (int s : scaling)
    if (s < 1) throw std::invalid_argument("DegreeParams: scaling entries must be >= 1");
}

}  // namespace rsalg
