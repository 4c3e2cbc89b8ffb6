#include "rsalg/render.hpp"

#include <charconv>

namespace rsalg {

namespace {

std::string key_of(const Tree& t) { return t.key(); }
std::string key_of(const PlusMonomial& m) { return m.key(); }
template <class L, class R>
std::string key_of(const TensorKey<L, R>& k) {
  return key_of(k.left) + " (x) " + key_of(k.right);
}

bool is_neg(const Rational& q) { return sgn(q) < 0; }
bool is_neg(double v) { return v < 0; }
bool is_unit(const Rational& q) { return abs(q) == 1; }
bool is_unit(double v) { return v == 1.0 || v == -1.0; }

template <class K, class C>
std::string render_sum(const Combination<K, C>& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x) {
    const bool neg = is_neg(c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (!is_unit(c)) out += render(neg ? C(-c) : c) + " ";
    out += key_of(k);
  }
  return out;
}

}  // namespace

std::string render(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string render(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render(const Tree& t) { return t.key(); }
std::string render(const PlusMonomial& m) { return m.key(); }
std::string render(const LinComb& x) { return render_sum(x); }
std::string render(const RealComb& x) { return render_sum(x); }
std::string render(const PlusComb& x) { return render_sum(x); }
std::string render(const TensorElem& x) { return render_sum(x); }
std::string render(const PlusTensor& x) { return render_sum(x); }

}  // namespace rsalg
