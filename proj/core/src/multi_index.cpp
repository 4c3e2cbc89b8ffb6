#include "rsalg/multi_index.hpp"

#include <stdexcept>

namespace rsalg {

MultiIndex::MultiIndex(std::size_t dim) : dim_(static_cast<std::uint8_t>(dim)) {
  if (dim > kMaxDim) throw std::invalid_argument("MultiIndex: dimension exceeds 4");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::span<const int>(entries.begin(), entries.size())) {}

MultiIndex::MultiIndex(std::span<const int> entries) : MultiIndex(entries.size()) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0) throw std::invalid_argument("MultiIndex: negative entry");
    v_[i] = entries[i];
  }
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t direction) {
  MultiIndex m(dim);
  m.v_.at(direction) = 1;
  return m;
}

bool MultiIndex::is_zero() const {
  for (std::size_t i = 0; i < dim_; ++i)
    if (v_[i] != 0) return false;
  return true;
}

int MultiIndex::total() const {
  int s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += v_[i];
  return s;
}

long MultiIndex::scaled(std::span<const int> scaling) const {
  long s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += static_cast<long>(scaling[i]) * v_[i];
  return s;
}

bool MultiIndex::leq(const MultiIndex& other) const {
  for (std::size_t i = 0; i < dim_; ++i)
    if (v_[i] > other.v_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex r = *this;
  r += other;
  return r;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("MultiIndex: dimension mismatch");
  for (std::size_t i = 0; i < dim_; ++i) v_[i] += other.v_[i];
  return *this;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("MultiIndex: dimension mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < dim_; ++i) {
    r.v_[i] -= other.v_[i];
    if (r.v_[i] < 0) throw std::domain_error("MultiIndex: subtraction below zero");
  }
  return r;
}

Integer MultiIndex::factorial() const {
  Integer f = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    Integer g;
    mpz_fac_ui(g.get_mpz_t(), static_cast<unsigned long>(v_[i]));
    f *= g;
  }
  return f;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) s += ',';
    s += std::to_string(v_[i]);
  }
  s += ')';
  return s;
}

Integer binomial(const MultiIndex& n, const MultiIndex& k) {
  if (!k.leq(n)) return 0;
  Integer b = 1;
  for (std::size_t i = 0; i < n.dim(); ++i) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n[i]), static_cast<unsigned long>(k[i]));
    b *= c;
  }
  return b;
}

namespace {

template <class Accept, class Bound>
void enumerate(std::size_t pos, MultiIndex& cur, Bound bound, Accept& accept,
               std::vector<MultiIndex>& out) {
  if (pos == cur.dim()) {
    if (accept(cur)) out.push_back(cur);
    return;
  }
  for (int v = 0; v <= bound(pos, cur); ++v) {
    cur[pos] = v;
    enumerate(pos + 1, cur, bound, accept, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_below(const MultiIndex& n) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n.dim());
  auto bound = [&](std::size_t pos, const MultiIndex&) { return n[pos]; };
  auto accept = [](const MultiIndex&) { return true; };
  enumerate(0, cur, bound, accept, out);
  return out;
}

std::vector<MultiIndex> indices_with_scaled_below(std::size_t dim, std::span<const int> scaling,
                                                  const Rational& bound) {
  std::vector<MultiIndex> out;
  if (bound <= 0) return out;
  MultiIndex cur(dim);
  // |l|_s < bound  <=>  |l|_s <= ceil(bound) - 1
  Integer top = bound.get_num() / bound.get_den();
  if (top * bound.get_den() == bound.get_num()) top -= 1;
  const long limit = top.get_si();
  auto used = [&](std::size_t upto, const MultiIndex& m) {
    long s = 0;
    for (std::size_t i = 0; i < upto; ++i) s += static_cast<long>(scaling[i]) * m[i];
    return s;
  };
  auto bnd = [&](std::size_t pos, const MultiIndex& m) {
    return static_cast<int>((limit - used(pos, m)) / scaling[pos]);
  };
  auto accept = [&](const MultiIndex& m) { return m.scaled(scaling) <= limit; };
  enumerate(0, cur, bnd, accept, out);
  return out;
}

}  // namespace rsalg
