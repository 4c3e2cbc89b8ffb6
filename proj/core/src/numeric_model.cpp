#include "rsalg/numeric_model.hpp"

#include <cmath>

namespace rsalg {

namespace {

// prod_a (y_a - x_a)^{k_a}; with x == nullptr, prod_a y_a^{k_a}.
Real power(const Grid& g, const Point& y, const Point* x, const MultiIndex& k) {
  Real v = 1;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    const Real base = x ? Real(y[a] - (*x)[a]) / g.extent(a) : g.coord(y, a);
    for (int j = 0; j < k[a]; ++j) v *= base;
  }
  return v;
}

std::string point_key(const Grid& g, const Point& p) { return std::to_string(g.linear(p)); }

// Derivative at 0 of the Lagrange basis on nodes j h, j = 0..n.
std::vector<Real> derivative_weights(int n, Real h) {
  std::vector<Real> w(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      if (k == j) continue;
      Real term = 1 / ((j - k) * h);
      for (int m = 0; m <= n; ++m)
        if (m != j && m != k) term *= (0 - m * h) / ((j - m) * h);
      w[j] += term;
    }
  }
  return w;
}

PlusMonomial single(const PlusFactor& f, std::size_t dim) { return PlusMonomial::make(MultiIndex(dim), {f}); }

}  // namespace

GridModel::GridModel(std::shared_ptr<const KernelFamily> kernels, NoisePair noise, const Hopf& hopf,
                     const PrepMap& prep)
    : kernels_(std::move(kernels)), noise_(std::move(noise)), hopf_(hopf), prep_(prep) {
  if (grid().dim() != hopf_.dim()) throw ConfigError("grid dimension does not match the degree configuration");
  if (noise_.xi.size() != grid().size() || noise_.dxi.size() != grid().size())
    throw ConfigError("noise fields do not match the grid size");
}

template <class V, class F>
V GridModel::memo(std::unordered_map<std::string, V>& table, const std::string& key, F&& compute) const {
  {
    std::shared_lock lock(mu_);
    if (auto it = table.find(key); it != table.end()) return it->second;
  }
  V value = compute();
  std::unique_lock lock(mu_);
  return table.try_emplace(key, std::move(value)).first->second;
}

void GridModel::clear_cache() const {
  {
    std::unique_lock lock(mu_);
    fields_.clear();
    scalars_.clear();
  }
  std::lock_guard lock(perturbed_mu_);
  for (const auto& p : perturbed_)
    if (p) p->clear_cache();
}

Field GridModel::product_field(const Tree& t, const Point* x, const std::vector<FieldPtr>& planted) const {
  const Grid& g = grid();
  Field out(g.size(), 1.0);
  if (!t.poly().is_zero())
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = power(g, g.point(l), x, t.poly());
  if (t.noise() != Noise::None) {
    const Field& n = t.noise() == Noise::Xi0 ? noise_.xi : noise_.dxi;
    for (std::size_t l = 0; l < out.size(); ++l) out[l] *= n[l];
  }
  for (const auto& p : planted)
    for (std::size_t l = 0; l < out.size(); ++l) out[l] *= (*p)[l];
  return out;
}

// ---- recentred model -------------------------------------------------------

Field GridModel::pi_hat(DegreeKind i, const Point& x, const Tree& t) const {
  if (t.is_planted()) return *planted_hat(i, x, t);
  std::vector<FieldPtr> planted;
  for (const auto& e : t.children()) planted.push_back(planted_hat(i, x, plant(e.index, e.body)));
  return product_field(t, &x, planted);
}

Field GridModel::pi(DegreeKind i, const Point& x, const Tree& t) const { return *body_full(i, x, t); }

GridModel::FieldPtr GridModel::planted_hat(DegreeKind i, const Point& x, const Tree& t) const {
  const std::string key = "h" + std::to_string(index_of(i)) + "|" + point_key(grid(), x) + "|" + t.key();
  return memo(fields_, key, [&] {
    const Edge& e = t.children().front();
    const FieldPtr body = body_full(i, x, e.body);
    Field out = kernels_->convolve(e.index, *body);
    const Grid& g = grid();
    const Rational deg = degree(t, i, hopf_.params());
    for (const auto& k : indices_with_scaled_below(g.dim(), hopf_.params().scaling, deg)) {
      const Real c = kernels_->convolve_at(e.index + k, *body, x);
      for (std::size_t l = 0; l < out.size(); ++l) out[l] -= g.taylor_monomial(g.point(l), x, k) * c;
    }
    return std::make_shared<const Field>(std::move(out));
  });
}

GridModel::FieldPtr GridModel::body_full(DegreeKind i, const Point& x, const Tree& t) const {
  const std::string key = "b" + std::to_string(index_of(i)) + "|" + point_key(grid(), x) + "|" + t.key();
  return memo(fields_, key, [&] {
    Field out(grid().size(), 0.0);
    for (const auto& [r, c] : prep_.apply(t)) {
      const Field v = pi_hat(i, x, r);
      const Real cd = to_real(c);
      for (std::size_t l = 0; l < out.size(); ++l) out[l] += cd * v[l];
    }
    return std::make_shared<const Field>(std::move(out));
  });
}

Field GridModel::eval(Flavor fl, DegreeKind i, const Point& x, const Tree& t) const {
  return fl == Flavor::Hat ? pi_hat(i, x, t) : pi(i, x, t);
}

Field GridModel::eval(Flavor fl, DegreeKind i, const Point& x, const RealComb& c) const {
  Field out(grid().size(), 0.0);
  for (const auto& [t, w] : c) {
    const Field v = eval(fl, i, x, t);
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += w * v[l];
  }
  return out;
}

Real GridModel::eval_at(Flavor fl, DegreeKind i, const Point& x, const Tree& t, const Point& y) const {
  if (fl == Flavor::Full) {
    Real s = 0;
    for (const auto& [r, c] : prep_.apply(t)) s += to_real(c) * eval_at(Flavor::Hat, i, x, r, y);
    return s;
  }
  const Grid& g = grid();
  const std::size_t ly = g.linear(y);
  Real v = power(g, y, &x, t.poly());
  if (t.noise() == Noise::Xi0) v *= noise_.xi[ly];
  if (t.noise() == Noise::Xi1) v *= noise_.dxi[ly];
  for (const auto& e : t.children()) v *= (*planted_hat(i, x, plant(e.index, e.body)))[ly];
  return v;
}

Real GridModel::eval_at(Flavor fl, DegreeKind i, const Point& x, const RealComb& c, const Point& y) const {
  Real s = 0;
  for (const auto& [t, w] : c) s += w * eval_at(fl, i, x, t, y);
  return s;
}

// ---- pre-model -------------------------------------------------------------

GridModel::FieldPtr GridModel::pre_planted(const Tree& t) const {
  return memo(fields_, "p|" + t.key(), [&] {
    const Edge& e = t.children().front();
    return std::make_shared<const Field>(kernels_->convolve(e.index, *pre_full(e.body)));
  });
}

GridModel::FieldPtr GridModel::pre_full(const Tree& t) const {
  return memo(fields_, "P|" + t.key(), [&] {
    Field out(grid().size(), 0.0);
    for (const auto& [r, c] : prep_.apply(t)) {
      std::vector<FieldPtr> planted;
      for (const auto& e : r.children()) planted.push_back(pre_planted(plant(e.index, e.body)));
      const Field v = product_field(r, nullptr, planted);
      const Real cd = to_real(c);
      for (std::size_t l = 0; l < out.size(); ++l) out[l] += cd * v[l];
    }
    return std::make_shared<const Field>(std::move(out));
  });
}

Field GridModel::pre_model(const Tree& t) const { return *pre_full(t); }

// ---- characters ------------------------------------------------------------

Real GridModel::factor_f(const Point& x, const PlusFactor& fac) const {
  const std::string key = "f" + std::to_string(index_of(fac.kind)) + "|" + point_key(grid(), x) + "|" + fac.str();
  return memo(scalars_, key,
              [&] { return -kernels_->convolve_at(fac.index, *body_full(fac.kind, x, fac.body), x); });
}

Real GridModel::f(const Point& x, const PlusMonomial& m) const {
  const Point zero{};
  Real v = power(grid(), zero, &x, m.poly());
  for (const auto& fac : m.factors()) v *= factor_f(x, fac);
  return v;
}

Real GridModel::f(const Point& x, const PlusComb& c) const {
  Real s = 0;
  for (const auto& [m, w] : c) s += to_real(w) * f(x, m);
  return s;
}

Real GridModel::factor_f_antipode(const Point& y, const PlusMonomial& m) const {
  return memo(scalars_, "a|" + point_key(grid(), y) + "|" + m.key(), [&] { return f(y, hopf_.antipode(m)); });
}

Real GridModel::factor_gamma(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& m) const {
  const std::string key =
      "g" + std::to_string(index_of(i)) + "|" + point_key(grid(), y) + "|" + point_key(grid(), x) + "|" + m.key();
  return memo(scalars_, key, [&] {
    Real s = 0;
    for (const auto& [k, c] : hopf_.coproduct_plus(i, m)) {
      // f_y A is a character: split the left factor.
      Real left = 1;
      for (std::size_t a = 0; a < grid().dim(); ++a)
        for (int j = 0; j < k.left.poly()[a]; ++j) left *= grid().coord(y, a);
      for (const auto& fac : k.left.factors()) left *= factor_f_antipode(y, single(fac, grid().dim()));
      s += to_real(c) * left * f(x, k.right);
    }
    return s;
  });
}

Real GridModel::gamma(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& m) const {
  Real v = power(grid(), y, &x, m.poly());
  for (const auto& fac : m.factors()) v *= factor_gamma(i, y, x, single(fac, grid().dim()));
  return v;
}

Real GridModel::gamma_direct(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& m) const {
  Real s = 0;
  for (const auto& [k, c] : hopf_.coproduct_plus(i, m)) s += to_real(c) * f(y, hopf_.antipode(k.left)) * f(x, k.right);
  return s;
}

// ---- re-expansion maps -----------------------------------------------------

RealComb GridModel::Gamma(DegreeKind i, const Point& y, const Point& x, const Tree& t) const {
  RealComb out;
  for (const auto& [k, c] : hopf_.coaction(i, t)) out.add(k.left, to_real(c) * gamma(i, y, x, k.right));
  return out;
}

RealComb GridModel::Gamma(DegreeKind i, const Point& y, const Point& x, const RealComb& c) const {
  RealComb out;
  for (const auto& [t, w] : c) out.add_scaled(Gamma(i, y, x, t), w);
  return out;
}

RealComb GridModel::dGammaBar(const Point& y, const Point& x, const Tree& t) const {
  return dGammaBar(y, x, LinComb(t));
}

RealComb GridModel::dGammaBar(const Point& y, const Point& x, const LinComb& c) const {
  RealComb out;
  for (const auto& [k, w] : hopf_.delta_hat0(c)) {
    const Real fx = f(x, k.right);
    if (fx == 0.0) continue;
    out.add_scaled(Gamma(DegreeKind::Zero, y, x, k.left), to_real(w) * fx);
  }
  return out;
}

RealComb GridModel::dGamma(const Point& y, const Point& x, const Tree& t) const {
  return project_Q0(dGammaBar(y, x, d_xi(t)));
}

// ---- Malliavin derivative --------------------------------------------------

const GridModel& GridModel::perturbed(int j) const {
  if (j == 0) return *this;
  std::lock_guard lock(perturbed_mu_);
  if (perturbed_.size() <= static_cast<std::size_t>(j)) perturbed_.resize(j + 1);
  auto& slot = perturbed_[j];
  if (!slot) slot = std::make_unique<GridModel>(kernels_, noise_.perturbed(j * kNodeSpacing), hopf_, prep_);
  return *slot;
}

Field GridModel::malliavin_delta(Flavor fl, DegreeKind i, const Point& x, const Tree& t) const {
  const int n = t.noise_count();
  Field out(grid().size(), 0.0);
  if (n == 0) return out;
  const std::vector<Real> w = derivative_weights(n, kNodeSpacing);
  for (int j = 0; j <= n; ++j) {
    const Field v = perturbed(j).eval(fl, i, x, t);
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += w[j] * v[l];
  }
  return out;
}

Field GridModel::malliavin_algebraic(Flavor fl, const Point& x, const Tree& t) const {
  return eval(fl, DegreeKind::One, x, to_real(d_xi(t)));
}

RealComb project_Q0(const RealComb& c) {
  RealComb out;
  for (const auto& [t, w] : c)
    if (t.xi1_count() == 0) out.add(t, w);
  return out;
}

RealComb project_PI(const RealComb& c) {
  RealComb out;
  for (const auto& [t, w] : c)
    if (t.is_planted() && t.children().front().index.is_zero()) out.add(t, w);
  return out;
}

namespace {

// Largest k with k * s < deg, or -1.
long taylor_order(const Rational& deg, int s) {
  if (deg <= 0) return -1;
  const Rational q = deg / s;
  Integer up;
  mpz_cdiv_q(up.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return up.get_si() - 1;
}

void visit_planted(const Tree& planted, const DegreeParams& p, long& order) {
  for (DegreeKind i : {DegreeKind::Zero, DegreeKind::One}) {
    const Rational deg = degree(planted, i, p);
    for (int s : p.scaling) order = std::max(order, taylor_order(deg, s));
  }
  for (const auto& e : planted.children().front().body.children())
    visit_planted(plant(e.index, e.body), p, order);
}

}  // namespace

int exact_half_width(const std::vector<Tree>& trees, const DegreeParams& params) {
  long order = 0;
  for (const auto& t : trees) visit_planted(plant(MultiIndex(params.dim()), t), params, order);
  return static_cast<int>(std::max<long>(1, (order + 1) / 2));
}

RealComb to_real(const LinComb& c) {
  RealComb out;
  for (const auto& [t, w] : c) out.add(t, to_real(w));
  return out;
}

Real to_real(const Rational& q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()))
    return static_cast<Real>(q.get_num().get_si()) / static_cast<Real>(q.get_den().get_si());
  return q.get_d();
}

}  // namespace rsalg
