#pragma once

#include <compare>
#include <map>
#include <utility>

namespace rsalg {

/// Finite formal sum of keys with coefficients; zero coefficients are never stored.
///
/// Backed by an ordered map so iteration order (and therefore every
/// rendering and report) is deterministic.
template <class Key, class Coeff>
class Combination {
 public:
  using map_type = std::map<Key, Coeff>;
  using const_iterator = typename map_type::const_iterator;

  Combination() = default;
  explicit Combination(const Key& k, const Coeff& c = Coeff(1)) { add(k, c); }

  void add(const Key& k, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Coeff coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }

  Combination& operator+=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Combination& operator*=(const Coeff& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  /// Adds s * o.
  void add_scaled(const Combination& o, const Coeff& s) {
    if (s == 0) return;
    for (const auto& [k, c] : o.terms_) add(k, c * s);
  }

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(Combination a, const Coeff& s) { return a *= s; }
  friend Combination operator*(const Coeff& s, Combination a) { return a *= s; }
  friend Combination operator-(Combination a) { return a *= Coeff(-1); }
  friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

 private:
  map_type terms_;
};

/// Key of a tensor product basis element. Orders by the right factor first, so
/// the leading term "tau (x) 1" of a coaction renders before the rest.
template <class L, class R>
struct TensorKey {
  L left;
  R right;

  friend bool operator==(const TensorKey&, const TensorKey&) = default;
  friend std::strong_ordering operator<=>(const TensorKey& a, const TensorKey& b) {
    if (auto c = a.right <=> b.right; c != 0) return c;
    return a.left <=> b.left;
  }
};

/// Linear extension of a key-level map f: Key -> Combination<OutKey, Coeff>.
template <class OutKey, class Key, class Coeff, class F>
Combination<OutKey, Coeff> lift_linear(const Combination<Key, Coeff>& x, F&& f) {
  Combination<OutKey, Coeff> out;
  for (const auto& [k, c] : x) out.add_scaled(f(k), c);
  return out;
}

/// Bilinear extension of a key-level product.
template <class OutKey, class K1, class K2, class Coeff, class F>
Combination<OutKey, Coeff> lift_bilinear(const Combination<K1, Coeff>& x,
                                         const Combination<K2, Coeff>& y, F&& f) {
  Combination<OutKey, Coeff> out;
  for (const auto& [k1, c1] : x)
    for (const auto& [k2, c2] : y) out.add_scaled(f(k1, k2), c1 * c2);
  return out;
}

}  // namespace rsalg
