#pragma once

#include <string>

#include "rsalg/algebra.hpp"

namespace rsalg {

/// "p/q" with the sign in front; integers without a denominator.
std::string render(const Rational& q);
/// Shortest round-trip decimal.
std::string render(double v);

std::string render(const Tree& t);
std::string render(const PlusMonomial& m);

// Sums render as "c1 k1 + c2 k2 - ..."; unit coefficients are omitted and the
// empty sum renders as "0". Tensor factors are joined by " (x) ".
std::string render(const LinComb& x);
std::string render(const RealComb& x);
std::string render(const PlusComb& x);
std::string render(const TensorElem& x);
std::string render(const PlusTensor& x);

}  // namespace rsalg
