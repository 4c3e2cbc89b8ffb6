#include <cctype>
#include <vector>

#include "rsalg/tree.hpp"

namespace rsalg {

namespace {

class TreeParser {
 public:
  TreeParser(std::string_view s, std::size_t dim) : s_(s), dim_(dim) {}

  Tree parse_all() {
    Tree t = tree();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected non-negative integer");
    return static_cast<int>(v);
  }

  MultiIndex index() {
    const std::size_t start = pos_;
    expect("(");
    std::vector<int> v{integer()};
    while (accept(",")) v.push_back(integer());
    expect(")");
    if (v.size() != dim_) {
      pos_ = start;
      fail("multi-index must have " + std::to_string(dim_) + " entries");
    }
    return MultiIndex(std::span<const int>(v));
  }

  Tree bracketed() {
    expect("[");
    Tree t = tree();
    expect("]");
    return t;
  }

  Tree factor() {
    skip_ws();
    if (accept("Xi0")) return Tree::noise(Noise::Xi0, dim_);
    if (accept("Xi1")) return Tree::noise(Noise::Xi1, dim_);
    if (accept("X^")) return Tree::monomial(index());
    if (accept("I_")) {
      MultiIndex a = index();
      return plant(a, bracketed());
    }
    if (accept("I")) return plant(MultiIndex(dim_), bracketed());
    if (accept("1")) return Tree::one(dim_);
    fail("expected a tree factor");
  }

  Tree tree() {
    Tree t = factor();
    while (accept("*")) {
      const std::size_t at = pos_;
      Tree f = factor();
      if (t.noise() != Noise::None && f.noise() != Noise::None) {
        pos_ = at;
        fail("product of two noises");
      }
      t = product(t, f);
    }
    return t;
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_tree(std::string_view text, std::size_t dim) {
  if (dim == 0 || dim > MultiIndex::kMaxDim) throw std::invalid_argument("parse_tree: bad dimension");
  return TreeParser(text, dim).parse_all();
}

}  // namespace rsalg
