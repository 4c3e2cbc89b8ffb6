#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rsalg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Multi-index in N^{d+1}; entry 0 is the time direction.
///
/// Stored inline (d <= 3) so trees and monomials stay cheap to copy.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxDim = 4;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::span<const int> entries);

  static MultiIndex unit(std::size_t dim, std::size_t direction);

  std::size_t dim() const { return dim_; }
  int operator[](std::size_t i) const { return v_[i]; }
  int& operator[](std::size_t i) { return v_[i]; }

  bool is_zero() const;
  int total() const;
  /// |n|_s = sum_i s_i n_i.
  long scaled(std::span<const int> scaling) const;

  /// Componentwise order: this <= other in every entry.
  bool leq(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex& operator+=(const MultiIndex& other);
  /// Throws std::domain_error if any entry would become negative.
  MultiIndex operator-(const MultiIndex& other) const;

  /// prod_i n_i!
  Integer factorial() const;

  /// "(0,2)"
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::array<std::int32_t, kMaxDim> v_{};
  std::uint8_t dim_ = 0;
};

/// prod_i binom(n_i, k_i); zero unless k <= n.
Integer binomial(const MultiIndex& n, const MultiIndex& k);

/// All multi-indices j with j <= n componentwise, in lexicographic order.
std::vector<MultiIndex> indices_below(const MultiIndex& n);

/// All multi-indices l of dimension `dim` with |l|_s < bound, lexicographic order.
std::vector<MultiIndex> indices_with_scaled_below(std::size_t dim, std::span<const int> scaling,
                                                  const Rational& bound);

}  // namespace rsalg
