#include <algorithm>
#include <cmath>
#include <set>

#include "rsalg/errors.hpp"
#include "rsalg/numeric_model.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"
#include "rsalg/suites.hpp"
#include "suite_support.hpp"

namespace rsalg {

namespace {

constexpr DegreeKind kZero = DegreeKind::Zero;
constexpr DegreeKind kOne = DegreeKind::One;

/// Base points and the pair of partners each identity is evaluated at.
struct Context {
  Point x, y, z;
  bool diagonal = false;
};

std::vector<Point> base_points(const Grid& g, int count) {
  const std::vector<double> times{0.25, 0.75};
  const std::vector<double> space = g.dim() == 2 ? std::vector<double>{5.0 / 16, 7.0 / 16, 9.0 / 16, 11.0 / 16}
                                                 : std::vector<double>{5.0 / 16, 11.0 / 16};
  std::vector<Point> out;
  Point p{};
  // Lexicographic product: time first, then each space axis.
  auto rec = [&](auto&& self, std::size_t axis) -> void {
    if (axis == g.dim()) {
      out.push_back(p);
      return;
    }
    for (double f : axis == 0 ? times : space) {
      p[axis] = static_cast<int>(std::lround(f * g.extent(axis))) % g.extent(axis);
      self(self, axis + 1);
    }
  };
  rec(rec, 0);
  if (count < 1 || static_cast<std::size_t>(count) > out.size())
    throw ConfigError("base_points must lie in 1.." + std::to_string(out.size()) + " for this grid");
  out.resize(count);
  return out;
}

std::string describe(const Grid& g, const Point& p) {
  std::vector<int> v(p.begin(), p.begin() + g.dim());
  return detail::render_point(v);
}

/// Size under the enumeration bound: kernel edges plus noise leaves.
int enumeration_size(const Tree& t) { return t.edge_count() + t.noise_count(); }

/// Whether every stencil application of reach a_j * m around p stays off the wrap.
bool interior(const Grid& g, const Point& p, const MultiIndex& a, int m) {
  for (std::size_t ax = 0; ax < g.dim(); ++ax) {
    const int reach = a[ax] * m;
    if (p[ax] - reach < 0 || p[ax] + reach >= g.extent(ax)) return false;
  }
  return true;
}

enum Id : std::size_t {
  kFactorisation,
  kCurtailment,
  kCurtailmentHat,
  kMalliavin,
  kMalliavinHat,
  kDerivative,
  kRecentering,
  kRecenteringHat,
  kGammaModel,
  kDiagonal,
  kDiagonalHat,
  kDiagonalNoRootNoise,
  kRootDefect,
  kPlanted,
  kContinuity,
  kFixedCount
};

std::vector<IdentityResult> fixed_identities() {
  std::vector<IdentityResult> t(kFixedCount);
  auto set = [&](Id i, const char* id, const char* text) {
    t[i].id = id;
    t[i].description = text;
  };
  set(kFactorisation, "model-factorisation", "Pi^{R,i}_x = (pre-model (x) f^{R,i}_x) Delta_i");
  set(kCurtailment, "curtailment", "Pi^{R,1}_x = (Pi^{R,0}_x (x) f^{R,0}_x) hat-Delta_0");
  set(kCurtailmentHat, "curtailment-hat", "hat-Pi^{R,1}_x = (hat-Pi^{R,0}_x (x) f^{R,0}_x) hat-Delta_0");
  set(kMalliavin, "malliavin-commutation", "delta Pi^{R,1}_x t = Pi^{R,1}_x D_Xi t");
  set(kMalliavinHat, "malliavin-commutation-hat", "delta hat-Pi^{R,1}_x t = hat-Pi^{R,1}_x D_Xi t");
  set(kDerivative, "derivative-commutation", "Pi^{R,i}_x I_a(t) = D^a Pi^{R,i}_x I(t) away from the wrap");
  set(kRecentering, "recentering", "Pi^{R,i}_x = Pi^{R,i}_y Gamma^{R,i}_{yx}");
  set(kRecenteringHat, "recentering-hat", "hat-Pi^{R,i}_x = hat-Pi^{R,i}_y Gamma^{R,i}_{yx}");
  set(kGammaModel, "gamma-model", "gamma^{R,0}_{xy}(tilde I+(t)) = (Pi^{R,0}_y I(t))(x)");
  set(kDiagonal, "diagonal-identity", "(Pi^{R,1}_y dGamma_{yx} t)(y) = (delta Pi^{R,1}_x t)(y)");
  set(kDiagonalHat, "diagonal-identity-hat", "(hat-Pi^{R,1}_y dGamma_{yx} t)(y) = (delta hat-Pi^{R,1}_x t)(y)");
  set(kDiagonalNoRootNoise, "diagonal-identity-noise-free-root",
      "both diagonal identities, on the trees without Xi0 at the root");
  set(kRootDefect, "diagonal-identity-root-defect",
      "for t = Xi0 t': (hat-Pi^{R,1}_y dGamma_{yx} t - delta hat-Pi^{R,1}_x t)(y) = -dxi(y) (hat-Pi_x t')(y)");
  set(kPlanted, "planted-decomposition", "(Pi^{R,1}_y (Id - P_I) dGamma_{yx} I(t))(y) = (delta Pi^{R,1}_x I(t))(y)");
  set(kContinuity, "continuity",
      "dGamma_{yx} - Gamma^{R,1}_{yz} dGamma_{zx} = Q_0 Gamma^0_{yx} D_Xi - Gamma^0_{yz} Q_0 Gamma^0_{zx} D_Xi");
  return t;
}

/// prod I(t_i) I_2(t) with nothing else at the root.
struct QuasilinearShape {
  Tree tree;
  std::vector<Tree> plain;  // the t_i
  Tree second;              // t
};

std::vector<QuasilinearShape> quasilinear_shapes(const std::vector<Tree>& t0, const MultiIndex& two) {
  std::vector<QuasilinearShape> out;
  for (const auto& t : t0) {
    if (!t.poly().is_zero() || t.noise() != Noise::None) continue;
    QuasilinearShape s{t, {}, t};
    int seconds = 0;
    bool ok = true;
    for (const auto& e : t.children()) {
      if (e.index.is_zero()) {
        s.plain.push_back(e.body);
      } else if (e.index == two) {
        s.second = e.body;
        ++seconds;
      } else {
        ok = false;
      }
    }
    if (ok && seconds == 1) out.push_back(std::move(s));
  }
  return out;
}

Field minus(Field a, const Field& b) {
  for (std::size_t l = 0; l < a.size(); ++l) a[l] -= b[l];
  return a;
}

/// Evaluates (pre-model or model) (x) character over a tensor.
template <class Left, class Right>
Field contract(const TensorElem& x, std::size_t size, Left&& left, Right&& right) {
  Field out(size, 0.0);
  for (const auto& [k, c] : x) {
    const Real w = to_real(c) * right(k.right);
    if (w == 0) continue;
    const Field f = left(k.left);
    for (std::size_t l = 0; l < size; ++l) out[l] += w * f[l];
  }
  return out;
}

struct Setup {
  const RunConfig& cfg;
  const Hopf& hopf;
  const Tolerance tol;
  std::vector<Tree> t0, t1;
  std::set<std::string> a1_violating;
  std::vector<Context> contexts;
};

/// Identities that depend only on the base point x.
void check_at_x(const GridModel& M, const Setup& S, const Tree& t, bool in_t0, const Context& c,
                detail::Sheet& sh) {
  const Grid& g = M.grid();
  const Hopf& h = S.hopf;
  const std::string key = t.key();
  const std::string ctx = "x=" + describe(g, c.x);
  auto at = [&](std::size_t l) { return "y=" + describe(g, g.point(l)); };

  for (DegreeKind i : {kZero, kOne}) {
    const Field lhs = M.pi(i, c.x, t);
    const Field rhs = contract(h.coaction(i, t), g.size(), [&](const Tree& s) { return M.pre_model(s); },
                               [&](const PlusMonomial& m) { return M.f(c.x, m); });
    sh.field(kFactorisation, lhs, rhs, S.tol, key, ctx + " i=" + std::to_string(index_of(i)), {}, at);
  }

  const TensorElem dh = h.delta_hat0(t);
  auto f0 = [&](const PlusMonomial& m) { return M.f(c.x, m); };
  for (Flavor fl : {Flavor::Full, Flavor::Hat}) {
    const Field lhs = M.eval(fl, kOne, c.x, t);
    const Field rhs = contract(dh, g.size(), [&](const Tree& s) { return M.eval(fl, kZero, c.x, s); }, f0);
    sh.field(fl == Flavor::Full ? kCurtailment : kCurtailmentHat, lhs, rhs, S.tol, key, ctx, {}, at);
  }

  if (in_t0)
    for (Flavor fl : {Flavor::Full, Flavor::Hat})
      sh.field(fl == Flavor::Full ? kMalliavin : kMalliavinHat, M.malliavin_delta(fl, kOne, c.x, t),
               M.malliavin_algebraic(fl, c.x, t), S.tol, key, ctx, {}, at);

  const std::size_t dim = g.dim();
  const MultiIndex zero(dim), e_t = MultiIndex::unit(dim, 0), e_x = MultiIndex::unit(dim, 1);
  const int m = M.kernels().half_width();
  // Planted trees beyond the edge bound are out of scope, as in the other identities on I(t).
  if (enumeration_size(t) >= S.cfg.edge_bound()) return;
  for (const MultiIndex& a : {e_x, e_x + e_x, e_t}) {
    std::vector<std::size_t> pts;
    for (std::size_t l = 0; l < g.size(); ++l)
      if (interior(g, g.point(l), a, m)) pts.push_back(l);
    if (pts.empty()) continue;  // an empty selection would mean every point
    for (DegreeKind i : {kZero, kOne}) {
      if (in_t0 && i == kOne) continue;  // identical to i = 0 on Xi1-free trees
      const Field lhs = M.pi(i, c.x, plant(a, t));
      const Field rhs = M.kernels().derivative(a, M.pi(i, c.x, plant(zero, t)));
      sh.field(kDerivative, lhs, rhs, S.tol, key, ctx + " a=" + a.str() + " i=" + std::to_string(index_of(i)),
               pts, at);
    }
  }
}

/// Identities that involve a second point y (and z).
void check_pair(const GridModel& M, const Setup& S, const Tree& t, bool in_t0, const Context& c,
                detail::Sheet& sh) {
  const Grid& g = M.grid();
  const Hopf& h = S.hopf;
  const DegreeParams& p = h.params();
  const std::string key = t.key();
  const std::string ctx = "x=" + describe(g, c.x) + " y=" + describe(g, c.y);
  const std::size_t ly = g.linear(c.y);
  auto at = [&](std::size_t l) { return "w=" + describe(g, g.point(l)); };

  if (!c.diagonal)
    for (DegreeKind i : {kZero, kOne}) {
      const std::string ci = ctx + " i=" + std::to_string(index_of(i));
      const RealComb G = M.Gamma(i, c.y, c.x, t);
      sh.field(kRecentering, M.pi(i, c.x, t), M.eval(Flavor::Full, i, c.y, G), S.tol, key, ci, {}, at);
      sh.field(kRecenteringHat, M.pi_hat(i, c.x, t), M.eval(Flavor::Hat, i, c.y, G), S.tol, key, ci, {}, at);
    }
  if (!in_t0) return;

  const MultiIndex zero(g.dim());
  const Tree it = plant(zero, t);
  const bool positive = degree(it, kZero, p) > 0;

  if (positive && enumeration_size(it) <= S.cfg.edge_bound()) {
    Real lhs = 0;
    for (const auto& [m, w] : tilde_basis(zero, t, p)) lhs += to_real(w) * M.gamma(kZero, c.x, c.y, m);
    sh.value(kGammaModel, lhs, M.eval_at(Flavor::Full, kZero, c.y, it, c.x), S.tol, key, ctx);

    const RealComb dg = M.dGamma(c.y, c.x, it);
    const Real l = M.eval_at(Flavor::Full, kOne, c.y, dg - project_PI(dg), c.y);
    sh.value(kPlanted, l, M.malliavin_delta(Flavor::Full, kOne, c.x, it)[ly], S.tol, key, ctx);
  }

  if (!S.a1_violating.count(key)) {
    const RealComb dg = M.dGamma(c.y, c.x, t);
    Real residual_hat = 0;
    for (Flavor fl : {Flavor::Full, Flavor::Hat}) {
      const Real lhs = M.eval_at(fl, kOne, c.y, dg, c.y);
      const Real rhs = M.malliavin_delta(fl, kOne, c.x, t)[ly];
      sh.value(fl == Flavor::Full ? kDiagonal : kDiagonalHat, lhs, rhs, S.tol, key, ctx);
      if (t.noise() != Noise::Xi0)
        sh.value(kDiagonalNoRootNoise, lhs, rhs, S.tol, key, ctx + (fl == Flavor::Full ? "" : " hat"));
      if (fl == Flavor::Hat) residual_hat = lhs - rhs;
    }
    if (t.noise() == Noise::Xi0) {
      const Tree rest = Tree::make(t.poly(), Noise::None, t.children());
      const Real predicted = -M.noise().dxi[ly] * M.eval_at(Flavor::Hat, kOne, c.x, rest, c.y);
      sh.value(kRootDefect, residual_hat, predicted, S.tol, key, ctx);
    }
  }

  if (!c.diagonal) {
    RealComb lhs = M.dGamma(c.y, c.x, t);
    lhs -= M.Gamma(kOne, c.y, c.z, M.dGamma(c.z, c.x, t));
    const RealComb dx = to_real(d_xi(t));
    RealComb rhs = project_Q0(M.Gamma(kZero, c.y, c.x, dx));
    rhs -= M.Gamma(kZero, c.y, c.z, project_Q0(M.Gamma(kZero, c.z, c.x, dx)));
    Field a, b;
    std::vector<std::string> names;
    std::set<Tree> support;
    for (const auto& [s, w] : lhs) support.insert(s);
    for (const auto& [s, w] : rhs) support.insert(s);
    for (const auto& s : support) {
      a.push_back(lhs.coeff(s));
      b.push_back(rhs.coeff(s));
      names.push_back(s.key());
    }
    if (support.empty()) {
      a.push_back(0);
      b.push_back(0);
      names.push_back("0");
    }
    sh.field(kContinuity, a, b, S.tol, key, ctx + " z=" + describe(g, c.z), {},
             [&](std::size_t j) { return "coefficient of " + names[j]; });
  }
}

}  // namespace

SuiteReport run_numeric_suite(const RunConfig& requested) {
  const RunConfig cfg = requested.with_default_bounds(kNumericBounds);
  const RuleSet rules = cfg.rules();
  const DegreeParams params = cfg.params();
  const Hopf hopf(params);
  const Grid grid(cfg.grid_t, cfg.grid_x, params.d);
  const NoisePair noise = cfg.noise == "mollified" ? NoisePair::mollified(grid, cfg.seed)
                                                    : NoisePair::trigonometric(grid);

  Setup S{cfg, hopf, cfg.tolerance(), enumerate_T0(rules), {}, {}, {}};
  S.t1 = lift_T1(S.t0);
  const int half_width = cfg.stencil > 0 ? cfg.stencil : exact_half_width(S.t1, params);
  auto kernels = std::make_shared<const KernelFamily>(grid, cfg.cutoff, half_width);
  for (const auto& v : check_assumption1(S.t0, params)) S.a1_violating.insert(v.tree.key());
  const std::vector<Point> pts = base_points(grid, cfg.base_points);
  const std::size_t B = pts.size();
  for (std::size_t j = 0; j < B; ++j) S.contexts.push_back({pts[j], pts[(j + 1) % B], pts[(j + 3) % B], false});
  for (std::size_t j = 0; j < B; ++j) S.contexts.push_back({pts[j], pts[j], pts[(j + 3) % B], true});

  SuiteReport rep;
  rep.suite = "numeric";
  rep.settings = detail::rule_settings(cfg, params);
  rep.settings.insert(rep.settings.end(),
                      {{"grid", std::to_string(cfg.grid_t) + "x" + std::to_string(cfg.grid_x)},
                       {"cutoff", render(cfg.cutoff)},
                       {"stencil_half_width", std::to_string(half_width) + (cfg.stencil > 0 ? "" : " (auto)")},
                       {"noise", cfg.noise},
                       {"seed", std::to_string(cfg.seed)},
                       {"base_points", std::to_string(B)},
                       {"tol", render(S.tol.rel)},
                       {"abs_tol", render(S.tol.abs)}});
  rep.identities = fixed_identities();

  const PrepMap R = cfg.prep_map();
  {
    GridModel M(kernels, noise, hopf, R);
    std::set<std::string> seen_x;
    for (const Context& c : S.contexts) {
      const bool fresh_x = seen_x.insert(describe(grid, c.x)).second;
      std::vector<detail::Sheet> sheets(S.t1.size(), detail::Sheet(kFixedCount));
      detail::parallel_for(S.t1.size(), cfg.jobs, [&](std::size_t j) {
        const Tree& t = S.t1[j];
        const bool in_t0 = t.xi1_count() == 0;
        if (fresh_x && !c.diagonal) check_at_x(M, S, t, in_t0, c, sheets[j]);
        check_pair(M, S, t, in_t0, c, sheets[j]);
      });
      for (const auto& s : sheets) s.merge_into(rep.identities);
      M.clear_cache();
    }
  }

  const std::size_t violations = S.a1_violating.size();
  if (violations > 0)
    rep.identities[kDiagonal].note = rep.identities[kDiagonalHat].note =
        rep.identities[kDiagonalNoRootNoise].note =
            std::to_string(violations) + " trees violating the branch-positivity assumption are skipped";

  // Quasilinear identities, optionally scanned over the preparation constant.
  const MultiIndex e_x = MultiIndex::unit(grid.dim(), 1);
  const MultiIndex two = e_x + e_x;
  const std::vector<QuasilinearShape> shapes =
      rules.edge_allowed(two) ? quasilinear_shapes(S.t0, two) : std::vector<QuasilinearShape>{};
  std::vector<Rational> cs = cfg.prep_depends_on_c() ? cfg.c_scan : std::vector<Rational>{cfg.prep_c};
  const bool scan = cfg.prep_depends_on_c();
  if (shapes.empty()) {
    IdentityResult r;
    r.id = "renormalisation-free-diagonal";
    r.description = "F_{xy}[prod I(t_i) I_2(t)](y) = prod (hat-Pi^{R,1}_x I(t_i))(y) hat-F_{xy}[I_2(t)](y)";
    r.note = "not applicable: no products with an I_2 factor";
    rep.identities.push_back(r);
  } else {
    const std::size_t first = rep.identities.size();
    for (const Rational& c : cs) {
      const std::string suffix = scan ? "[c=" + render(c) + "]" : "";
      IdentityResult a, b;
      a.id = "renormalisation-free-diagonal" + suffix;
      a.description = "F_{xy}[prod I(t_i) I_2(t)](y) = prod (hat-Pi^{R,1}_x I(t_i))(y) hat-F_{xy}[I_2(t)](y)";
      b.id = "second-derivative" + suffix;
      b.description = "hat-F_{xy}[I_2(t)](y) = D^2_x (delta hat-Pi^{R,1}_x - hat-Pi^{R,1}_y dGamma_{yx}) I(t) at y";
      rep.identities.push_back(a);
      rep.identities.push_back(b);
    }
    IdentityResult inv;
    inv.id = "c-invariance";
    inv.description = "the residual of the renormalisation-free identity does not depend on c";
    if (!scan || cs.size() < 2) inv.note = "not applicable: the preparation map has no scanned constant";
    rep.identities.push_back(inv);
    const std::size_t n_ids = rep.identities.size() - first;

    // residual[shape][context][c] and the scale it is measured against
    std::vector<std::vector<std::vector<std::pair<Real, Real>>>> residual(
        shapes.size(), std::vector<std::vector<std::pair<Real, Real>>>(S.contexts.size()));
    std::vector<detail::Sheet> scan_sheets;
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      const PrepMap Rc = cfg.prep_map(cs[ci]);
      GridModel M(kernels, noise, hopf, Rc);
      const std::string cctx = scan ? "c=" + render(cs[ci]) + " " : "";
      for (std::size_t k = 0; k < S.contexts.size(); ++k) {
        const Context& c = S.contexts[k];
        const std::size_t ly = grid.linear(c.y);
        const std::string ctx = cctx + "x=" + describe(grid, c.x) + " y=" + describe(grid, c.y);
        std::vector<detail::Sheet> sheets(shapes.size(), detail::Sheet(n_ids));
        std::vector<std::pair<Real, Real>> res(shapes.size());
        detail::parallel_for(shapes.size(), cfg.jobs, [&](std::size_t j) {
          const QuasilinearShape& s = shapes[j];
          const MultiIndex zero(grid.dim());
          auto F = [&](Flavor fl, const Tree& t) {
            return M.malliavin_delta(fl, kOne, c.x, t)[ly] - M.eval_at(fl, kOne, c.y, M.dGamma(c.y, c.x, t), c.y);
          };
          const Real lhs = F(Flavor::Full, s.tree);
          const Tree i2 = plant(two, s.second);
          const Real fhat = F(Flavor::Hat, i2);
          Real rhs = fhat;
          for (const auto& ti : s.plain) rhs *= M.eval_at(Flavor::Hat, kOne, c.x, plant(zero, ti), c.y);
          sheets[j].value(2 * ci, lhs, rhs, S.tol, s.tree.key(), ctx);
          res[j] = {lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))};

          if (interior(grid, c.y, two, M.kernels().half_width())) {
            const Tree it = plant(zero, s.second);
            const Field inc =
                minus(M.malliavin_delta(Flavor::Hat, kOne, c.x, it), M.eval(Flavor::Hat, kOne, c.y, M.dGamma(c.y, c.x, it)));
            sheets[j].value(2 * ci + 1, fhat, M.kernels().derivative(two, inc)[ly], S.tol, s.tree.key(), ctx);
          }
        });
        for (std::size_t j = 0; j < shapes.size(); ++j) residual[j][k].push_back(res[j]);
        for (auto& s : sheets) scan_sheets.push_back(std::move(s));
        M.clear_cache();
      }
    }
    if (scan && cs.size() >= 2) {
      detail::Sheet inv_sheet(n_ids);
      for (std::size_t j = 0; j < shapes.size(); ++j)
        for (std::size_t k = 0; k < S.contexts.size(); ++k) {
          const auto& r = residual[j][k];
          Real scale = 0;
          for (const auto& [v, s] : r) scale = std::max(scale, s);
          const Context& c = S.contexts[k];
          for (std::size_t ci = 1; ci < r.size(); ++ci)
            inv_sheet.value_scaled(n_ids - 1, r[ci].first, r[0].first, scale, S.tol, shapes[j].tree.key(),
                                   "c=" + render(cs[ci]) + " vs c=" + render(cs[0]) + " x=" + describe(grid, c.x) +
                                       " y=" + describe(grid, c.y));
        }
      scan_sheets.push_back(std::move(inv_sheet));
    }
    std::vector<IdentityResult> tail(rep.identities.begin() + first, rep.identities.end());
    for (const auto& s : scan_sheets) s.merge_into(tail);
    for (auto& r : tail)
      if (r.checked == 0 && r.note.empty())
        r.note = "nothing checked: no base point lies far enough from the wrap for the I_2 stencil";
    std::copy(tail.begin(), tail.end(), rep.identities.begin() + first);
  }

  rep.counts = {{"trees_T0", S.t0.size()},
                {"trees_T1", S.t1.size()},
                {"quasilinear_shapes", shapes.size()},
                {"contexts", S.contexts.size()},
                {"assumption1_violating_trees", violations}};
  return rep;
}

}  // namespace rsalg
