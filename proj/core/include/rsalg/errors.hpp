#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsalg {

/// Both factors of a tree product carry a noise at the root.
class NoiseProduct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tree / combination text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}
  std::size_t position() const { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// Product of plus-monomials built from different degree kinds.
class KindMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A monomial that cannot be written in the tilde basis of T^{+,0}.
class BasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration would exceed the configured cap.
class BoundsTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent run configuration (grid, kernel, presets, flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rsalg
