#pragma once

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsalg/grid.hpp"
#include "rsalg/hopf.hpp"
#include "rsalg/prep.hpp"

namespace rsalg {

/// Which recursion a tree is evaluated with: the bare multiplicative one
/// (hat) or with the preparation map applied first.
enum class Flavor { Hat, Full };

/// Grid realisation of the recentred models, the pre-model and the characters.
///
/// Every map is a pure function of its arguments; results are memoised per
/// base point and tree (planted trees and bodies only) and the tables allow
/// concurrent readers. `clear_cache` drops the field tables to bound memory.
class GridModel {
 public:
  GridModel(std::shared_ptr<const KernelFamily> kernels, NoisePair noise, const Hopf& hopf,
            const PrepMap& prep);
  GridModel(const GridModel&) = delete;
  GridModel& operator=(const GridModel&) = delete;

  const Grid& grid() const { return kernels_->grid(); }
  const KernelFamily& kernels() const { return *kernels_; }
  const NoisePair& noise() const { return noise_; }
  const Hopf& hopf() const { return hopf_; }
  const PrepMap& prep() const { return prep_; }

  /// hat-Pi^{R,i}_x t.
  Field pi_hat(DegreeKind i, const Point& x, const Tree& t) const;
  /// Pi^{R,i}_x t = hat-Pi^{R,i}_x R t.
  Field pi(DegreeKind i, const Point& x, const Tree& t) const;
  Field eval(Flavor fl, DegreeKind i, const Point& x, const Tree& t) const;
  Field eval(Flavor fl, DegreeKind i, const Point& x, const RealComb& c) const;
  /// Same as eval but only at one point; products are evaluated factorwise.
  Real eval_at(Flavor fl, DegreeKind i, const Point& x, const Tree& t, const Point& y) const;
  Real eval_at(Flavor fl, DegreeKind i, const Point& x, const RealComb& c, const Point& y) const;

  /// The uncentred pre-model.
  Field pre_model(const Tree& t) const;

  /// f^{R,i}_x on a monomial; the kind is read off its factors.
  Real f(const Point& x, const PlusMonomial& m) const;
  Real f(const Point& x, const PlusComb& c) const;
  /// gamma^{R,i}_{yx} = (f_y A (x) f_x) Delta^+_i, so that Pi_y Gamma_{yx} = Pi_x.
  Real gamma(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& m) const;
  /// Same value computed without the factorwise shortcut (through Delta^+_i of the whole monomial).
  Real gamma_direct(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& m) const;

  /// Gamma^{R,i}_{yx} = (Id (x) gamma_{yx}) Delta_i.
  RealComb Gamma(DegreeKind i, const Point& y, const Point& x, const Tree& t) const;
  RealComb Gamma(DegreeKind i, const Point& y, const Point& x, const RealComb& c) const;
  /// (Gamma^{R,0}_{yx} (x) f_x) hat-Delta_0.
  RealComb dGammaBar(const Point& y, const Point& x, const Tree& t) const;
  RealComb dGammaBar(const Point& y, const Point& x, const LinComb& c) const;
  /// Q_0 dGammaBar D_Xi.
  RealComb dGamma(const Point& y, const Point& x, const Tree& t) const;

  /// Directional derivative of eval(fl, i, x, t) in the noise along dxi, by
  /// exact polynomial interpolation over noise_count(t)+1 perturbations.
  Field malliavin_delta(Flavor fl, DegreeKind i, const Point& x, const Tree& t) const;
  /// The tree-level counterpart eval(fl, 1, x, D_Xi t).
  Field malliavin_algebraic(Flavor fl, const Point& x, const Tree& t) const;

  void clear_cache() const;

  /// Spacing of the interpolation nodes t_j = j h.
  static constexpr double kNodeSpacing = 0.5;

 private:
  using FieldPtr = std::shared_ptr<const Field>;

  FieldPtr planted_hat(DegreeKind i, const Point& x, const Tree& planted) const;
  FieldPtr body_full(DegreeKind i, const Point& x, const Tree& body) const;
  FieldPtr pre_planted(const Tree& planted) const;
  FieldPtr pre_full(const Tree& body) const;
  Field product_field(const Tree& t, const Point* x, const std::vector<FieldPtr>& planted) const;
  Real factor_f(const Point& x, const PlusFactor& fac) const;
  Real factor_f_antipode(const Point& y, const PlusMonomial& single) const;
  Real factor_gamma(DegreeKind i, const Point& y, const Point& x, const PlusMonomial& single) const;
  const GridModel& perturbed(int j) const;

  template <class V, class F>
  V memo(std::unordered_map<std::string, V>& table, const std::string& key, F&& compute) const;

  std::shared_ptr<const KernelFamily> kernels_;
  NoisePair noise_;
  const Hopf& hopf_;
  const PrepMap& prep_;

  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, FieldPtr> fields_;
  mutable std::unordered_map<std::string, Real> scalars_;
  mutable std::mutex perturbed_mu_;
  mutable std::vector<std::unique_ptr<GridModel>> perturbed_;
};

/// Smallest stencil half-width m whose stencil differentiates exactly (degree
/// <= 2m) every Taylor polynomial subtracted for these trees, their planted
/// subtrees and I(t), under either degree. At least 1.
int exact_half_width(const std::vector<Tree>& trees, const DegreeParams& params);

/// Q_0 on real combinations.
RealComb project_Q0(const RealComb& c);
/// Planted trees I(tau) with zero edge index.
RealComb project_PI(const RealComb& c);
RealComb to_real(const LinComb& c);
/// q in working precision; exact when numerator and denominator fit in 64 bits.
Real to_real(const Rational& q);

}  // namespace rsalg
