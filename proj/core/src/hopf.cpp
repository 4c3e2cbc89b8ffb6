#include "rsalg/hopf.hpp"

#include <mutex>

namespace rsalg {

namespace {

Rational inv_factorial(const MultiIndex& l) { return Rational(Integer(1), l.factorial()); }

int sign_of(const MultiIndex& l) { return l.total() % 2 == 0 ? 1 : -1; }

}  // namespace

Hopf::Hopf(DegreeParams params) : params_(std::move(params)) { params_.validate(); }

template <class V, class F>
const V& Hopf::memo(std::unordered_map<std::string, V>& table, const std::string& key,
                    F&& compute) const {
  {
    std::shared_lock lock(mu_);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
  }
  V value = compute();
  std::unique_lock lock(mu_);
  return table.try_emplace(key, std::move(value)).first->second;
}

PlusComb Hopf::plus_factor(DegreeKind i, const MultiIndex& a, const Tree& t) const {
  auto m = plus_planted(i, a, t, params_);
  return m ? PlusComb(*m) : PlusComb();
}

// ---- Delta_i ---------------------------------------------------------------

TensorElem Hopf::coaction(DegreeKind i, const Tree& t) const {
  if (t.is_planted()) return planted_coaction(i, t);
  TensorElem out;
  const MultiIndex& k = t.poly();
  for (const auto& j : indices_below(k))
    out.add({Tree::make(j, t.noise(), {}), PlusMonomial::x(k - j)}, Rational(binomial(k, j)));
  for (const auto& e : t.children()) out = multiply(out, planted_coaction(i, plant(e.index, e.body)));
  return out;
}

TensorElem Hopf::coaction(DegreeKind i, const LinComb& x) const {
  TensorElem out;
  for (const auto& [t, c] : x) out.add_scaled(coaction(i, t), c);
  return out;
}

const TensorElem& Hopf::planted_coaction(DegreeKind i, const Tree& t) const {
  return memo(coaction_[index_of(i)], t.key(),
              [&] { return compute_planted_coaction(i, t.children().front()); });
}

TensorElem Hopf::compute_planted_coaction(DegreeKind i, const Edge& e) const {
  const MultiIndex& a = e.index;
  const Tree& sigma = e.body;
  TensorElem out;
  for (const auto& [k, c] : coaction(i, sigma)) out.add({plant(a, k.left), k.right}, c);
  const Rational top = degree(plant(a, sigma), i, params_);
  for (const auto& n : indices_with_scaled_below(dim(), params_.scaling, top)) {
    auto pf = plus_planted(i, a + n, sigma, params_);
    if (!pf) continue;
    for (const auto& l : indices_below(n)) {
      const MultiIndex m = n - l;
      out.add({Tree::monomial(l), mult_plus(PlusMonomial::x(m), *pf)},
              inv_factorial(l) * inv_factorial(m));
    }
  }
  return out;
}

// ---- Delta^+_i -------------------------------------------------------------

PlusTensor Hopf::coproduct_plus(DegreeKind i, const PlusMonomial& m) const {
  for (const auto& f : m.factors())
    if (f.kind != i) throw KindMismatch("coproduct_plus: factor kind differs from the map kind");
  PlusTensor out;
  const MultiIndex& k = m.poly();
  for (const auto& j : indices_below(k))
    out.add({PlusMonomial::x(j), PlusMonomial::x(k - j)}, Rational(binomial(k, j)));
  for (const auto& f : m.factors())
    out = multiply(out, factor_coproduct(i, PlusMonomial::make(MultiIndex(dim()), {f})));
  return out;
}

PlusTensor Hopf::coproduct_plus(DegreeKind i, const PlusComb& x) const {
  PlusTensor out;
  for (const auto& [m, c] : x) out.add_scaled(coproduct_plus(i, m), c);
  return out;
}

const PlusTensor& Hopf::factor_coproduct(DegreeKind i, const PlusMonomial& m) const {
  return memo(coproduct_[index_of(i)], m.key(),
              [&] { return compute_factor_coproduct(i, m.factors().front()); });
}

PlusTensor Hopf::compute_factor_coproduct(DegreeKind i, const PlusFactor& f) const {
  PlusTensor out;
  out.add({PlusMonomial::one(dim()), PlusMonomial::make(MultiIndex(dim()), {f})}, 1);
  for (const auto& [k, c] : coaction(i, f.body)) {
    const Rational top = degree(plant(f.index, k.left), i, params_);
    for (const auto& l : indices_with_scaled_below(dim(), params_.scaling, top)) {
      auto pf = plus_planted(i, f.index + l, k.left, params_);
      if (!pf) continue;
      out.add({*pf, mult_plus(PlusMonomial::x(l), k.right)}, c * sign_of(l) * inv_factorial(l));
    }
  }
  return out;
}

// ---- Antipode --------------------------------------------------------------

PlusComb Hopf::antipode(const PlusMonomial& m) const {
  PlusComb out(PlusMonomial::x(m.poly()), Rational(sign_of(m.poly())));
  for (const auto& f : m.factors())
    out = multiply(out, factor_antipode(PlusMonomial::make(MultiIndex(dim()), {f})));
  return out;
}

PlusComb Hopf::antipode(const PlusComb& x) const {
  PlusComb out;
  for (const auto& [m, c] : x) out.add_scaled(antipode(m), c);
  return out;
}

const PlusComb& Hopf::factor_antipode(const PlusMonomial& m) const {
  return memo(antipode_, m.key(), [&] { return compute_factor_antipode(m.factors().front()); });
}

PlusComb Hopf::compute_factor_antipode(const PlusFactor& f) const {
  PlusComb out;
  for (const auto& [k, c] : coaction(f.kind, f.body)) {
    const PlusComb s = antipode(k.right);
    const Rational top = degree(plant(f.index, k.left), f.kind, params_);
    for (const auto& l : indices_with_scaled_below(dim(), params_.scaling, top)) {
      auto pf = plus_planted(f.kind, f.index + l, k.left, params_);
      if (!pf) continue;
      const PlusMonomial head = mult_plus(PlusMonomial::x(l), *pf);
      for (const auto& [sm, sc] : s) out.add(mult_plus(head, sm), -c * inv_factorial(l) * sc);
    }
  }
  return out;
}

// ---- hat-Delta_0 -----------------------------------------------------------

TensorElem Hopf::delta_hat0(const Tree& t) const {
  if (t.is_planted()) return planted_delta_hat0(t);
  TensorElem out({Tree::make(t.poly(), t.noise(), {}), PlusMonomial::one(t.dim())});
  for (const auto& e : t.children()) out = multiply(out, planted_delta_hat0(plant(e.index, e.body)));
  return out;
}

TensorElem Hopf::delta_hat0(const LinComb& x) const {
  TensorElem out;
  for (const auto& [t, c] : x) out.add_scaled(delta_hat0(t), c);
  return out;
}

const TensorElem& Hopf::planted_delta_hat0(const Tree& t) const {
  return memo(delta_hat_, t.key(), [&] { return compute_planted_delta_hat0(t.children().front()); });
}

TensorElem Hopf::compute_planted_delta_hat0(const Edge& e) const {
  const MultiIndex& a = e.index;
  const Tree& sigma = e.body;
  const TensorElem inner = delta_hat0(sigma);
  TensorElem out;
  for (const auto& [k, c] : inner) out.add({plant(a, k.left), k.right}, c);
  const Rational low = degree(plant(a, sigma), DegreeKind::One, params_);
  for (const auto& [k, c] : inner) {
    const Rational top = degree(plant(a, k.left), DegreeKind::Zero, params_);
    for (const auto& l : indices_with_scaled_below(dim(), params_.scaling, top)) {
      if (params_.scaled(l) < low) continue;
      auto pf = plus_planted(DegreeKind::Zero, a + l, k.left, params_);
      if (!pf) continue;
      out.add({Tree::monomial(l), mult_plus(*pf, k.right)}, -c * inv_factorial(l));
    }
  }
  return out;
}

// ---- hat-Gamma_0 -----------------------------------------------------------

PlusComb Hopf::gamma_hat0(const PlusMonomial& m) const {
  for (const auto& f : m.factors())
    if (f.kind != DegreeKind::Zero)
      throw BasisError("gamma_hat0: factor " + f.str() + " is not in T^{+,0}");
  if (!m.poly().is_zero()) return {};
  PlusComb out = unit_plus(m.dim());
  for (const auto& f : m.factors()) {
    out = multiply(out, factor_gamma_hat0(PlusMonomial::make(MultiIndex(dim()), {f})));
    if (out.empty()) break;
  }
  return out;
}

PlusComb Hopf::gamma_hat0(const PlusComb& x) const {
  PlusComb out;
  for (const auto& [m, c] : x) out.add_scaled(gamma_hat0(m), c);
  return out;
}

const PlusComb& Hopf::factor_gamma_hat0(const PlusMonomial& m) const {
  return memo(gamma_hat_, m.key(), [&] { return compute_factor_gamma_hat0(m.factors().front()); });
}

PlusComb Hopf::compute_factor_gamma_hat0(const PlusFactor& f) const {
  // Gamma-hat kills X, so I+_a(tau) and its tilde-basis element have the same image.
  PlusComb g;
  if (degree(plant(f.index, f.body), DegreeKind::One, params_) > 0) return g;
  for (const auto& [k, c] : delta_hat0(f.body)) {
    auto pf = plus_planted(DegreeKind::Zero, f.index, k.left, params_);
    if (pf) g.add(mult_plus(*pf, k.right), -c);
  }
  return g;
}

// ---- D_Xi and projections --------------------------------------------------

LinComb d_xi(const Tree& t) {
  LinComb out;
  if (t.noise_count() == t.xi1_count()) return out;
  if (t.noise() == Noise::Xi0) out.add(Tree::make(t.poly(), Noise::Xi1, t.children()), 1);
  const auto& ch = t.children();
  for (std::size_t j = 0; j < ch.size(); ++j) {
    if (j > 0 && ch[j] == ch[j - 1]) continue;
    std::size_t mult = 1;
    while (j + mult < ch.size() && ch[j + mult] == ch[j]) ++mult;
    for (const auto& [b, c] : d_xi(ch[j].body)) {
      std::vector<Edge> edges = ch;
      edges[j].body = b;
      out.add(Tree::make(t.poly(), t.noise(), std::move(edges)), c * static_cast<long>(mult));
    }
  }
  return out;
}

LinComb d_xi(const LinComb& x) {
  return lift_linear<Tree>(x, [](const Tree& t) { return d_xi(t); });
}

LinComb project_Q0(const LinComb& x) {
  LinComb out;
  for (const auto& [t, c] : x)
    if (t.xi1_count() == 0) out.add(t, c);
  return out;
}

LinComb project_PI(const LinComb& x) {
  LinComb out;
  for (const auto& [t, c] : x)
    if (t.is_planted() && t.children().front().index.is_zero()) out.add(t, c);
  return out;
}

}  // namespace rsalg
