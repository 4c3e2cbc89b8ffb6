#include "rsalg/algebra.hpp"

#include <algorithm>

namespace rsalg {

std::string PlusFactor::str() const {
  return (kind == DegreeKind::Zero ? "I+_" : "I+1_") + index.str() + "[" + body.key() + "]";
}

PlusMonomial PlusMonomial::one(std::size_t dim) { return make(MultiIndex(dim), {}); }

PlusMonomial PlusMonomial::x(const MultiIndex& k) { return make(k, {}); }

PlusMonomial PlusMonomial::make(MultiIndex poly, std::vector<PlusFactor> factors) {
  PlusMonomial m;
  m.poly_ = poly;
  std::vector<std::pair<std::string, PlusFactor>> keyed;
  keyed.reserve(factors.size());
  for (auto& f : factors) keyed.emplace_back(f.str(), std::move(f));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string key;
  if (!poly.is_zero()) key = "X^" + poly.str();
  for (auto& [s, f] : keyed) {
    if (!key.empty()) key += '*';
    key += s;
    m.factors_.push_back(std::move(f));
  }
  m.key_ = key.empty() ? "1" : std::move(key);
  return m;
}

std::optional<PlusMonomial> plus_planted(DegreeKind kind, const MultiIndex& a, const Tree& body,
                                         const DegreeParams& params) {
  if (degree(plant(a, body), kind, params) <= 0) return std::nullopt;
  return PlusMonomial::make(MultiIndex(body.dim()), {PlusFactor{kind, a, body}});
}

PlusMonomial mult_plus(const PlusMonomial& a, const PlusMonomial& b) {
  if (b.is_one()) return a;
  if (a.is_one()) return b;
  std::vector<PlusFactor> f = a.factors();
  for (const auto& g : b.factors()) {
    if (!f.empty() && f.front().kind != g.kind)
      throw KindMismatch("mult_plus: factors of different degree kinds");
    f.push_back(g);
  }
  return PlusMonomial::make(a.poly() + b.poly(), std::move(f));
}

PlusComb tilde_basis(const MultiIndex& a, const Tree& t, const DegreeParams& params) {
  PlusComb out;
  const Rational top = degree(plant(a, t), DegreeKind::Zero, params);
  for (const auto& l : indices_with_scaled_below(t.dim(), params.scaling, top)) {
    auto m = plus_planted(DegreeKind::Zero, a + l, t, params);
    if (!m) continue;
    out.add(mult_plus(PlusMonomial::x(l), *m), Rational(1, l.factorial()));
  }
  return out;
}

LinComb multiply(const LinComb& a, const LinComb& b) {
  return lift_bilinear<Tree>(a, b, [](const Tree& x, const Tree& y) { return LinComb(product(x, y)); });
}

PlusComb multiply(const PlusComb& a, const PlusComb& b) {
  return lift_bilinear<PlusMonomial>(
      a, b, [](const PlusMonomial& x, const PlusMonomial& y) { return PlusComb(mult_plus(x, y)); });
}

TensorElem multiply(const TensorElem& a, const TensorElem& b) {
  using K = TensorKey<Tree, PlusMonomial>;
  return lift_bilinear<K>(a, b, [](const K& x, const K& y) {
    return TensorElem(K{product(x.left, y.left), mult_plus(x.right, y.right)});
  });
}

PlusTensor multiply(const PlusTensor& a, const PlusTensor& b) {
  using K = TensorKey<PlusMonomial, PlusMonomial>;
  return lift_bilinear<K>(a, b, [](const K& x, const K& y) {
    return PlusTensor(K{mult_plus(x.left, y.left), mult_plus(x.right, y.right)});
  });
}

LinComb unit_lin(std::size_t dim) { return LinComb(Tree::one(dim)); }
PlusComb unit_plus(std::size_t dim) { return PlusComb(PlusMonomial::one(dim)); }
TensorElem unit_tensor(std::size_t dim) {
  return TensorElem({Tree::one(dim), PlusMonomial::one(dim)});
}
PlusTensor unit_plus_tensor(std::size_t dim) {
  return PlusTensor({PlusMonomial::one(dim), PlusMonomial::one(dim)});
}

Tree as_tree(const MultiIndex& k) { return Tree::monomial(k); }

namespace {

// Distributes the remaining derivative r over children[i..], multiplying the
// Leibniz weight into coef.
void distribute(const Tree& t, std::size_t i, const MultiIndex& r, const Rational& coef,
                const MultiIndex& poly, std::vector<Edge>& acc, LinComb& out) {
  const auto& ch = t.children();
  if (i == ch.size()) {
    if (!r.is_zero()) return;
    out.add(Tree::make(poly, t.noise(), acc), coef);
    return;
  }
  for (const auto& p : indices_below(r)) {
    acc.push_back(Edge{ch[i].index + p, ch[i].body});
    distribute(t, i + 1, r - p, coef * Rational(binomial(r, p)), poly, acc, out);
    acc.pop_back();
  }
}

}  // namespace

LinComb derive(const MultiIndex& p, const Tree& t) {
  LinComb out;
  const MultiIndex& q = t.poly();
  for (const auto& p0 : indices_below(p)) {
    if (!p0.leq(q)) continue;
    const MultiIndex rest = q - p0;
    const Rational w = Rational(binomial(p, p0) * (q.factorial() / rest.factorial()));
    std::vector<Edge> acc;
    distribute(t, 0, p - p0, w, rest, acc, out);
  }
  return out;
}

LinComb derive(const MultiIndex& p, const LinComb& x) {
  return lift_linear<Tree>(x, [&](const Tree& t) { return derive(p, t); });
}

TensorElem tensor(const LinComb& a, const PlusComb& b) {
  TensorElem out;
  for (const auto& [t, c] : a)
    for (const auto& [m, d] : b) out.add({t, m}, c * d);
  return out;
}

}  // namespace rsalg
