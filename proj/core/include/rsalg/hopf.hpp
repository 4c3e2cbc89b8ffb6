#pragma once

#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "rsalg/algebra.hpp"

namespace rsalg {

/// Structure maps of the tree Hopf algebras for one fixed DegreeParams.
///
/// All maps are pure. Images of planted trees and of single-factor monomials
/// are memoised (products are recomputed, which keeps memory bounded on large
/// enumerations). The memo tables allow concurrent readers, and a concurrent
/// duplicate insert keeps whichever value landed first (they are equal).
class Hopf {
 public:
  explicit Hopf(DegreeParams params);
  Hopf(const Hopf&) = delete;
  Hopf& operator=(const Hopf&) = delete;

  const DegreeParams& params() const { return params_; }
  std::size_t dim() const { return params_.dim(); }

  /// Delta_i : T_i -> T_i (x) T^{+,i}, multiplicative.
  TensorElem coaction(DegreeKind i, const Tree& t) const;
  TensorElem coaction(DegreeKind i, const LinComb& x) const;

  /// Delta^+_i on T^{+,i}, multiplicative.
  PlusTensor coproduct_plus(DegreeKind i, const PlusMonomial& m) const;
  PlusTensor coproduct_plus(DegreeKind i, const PlusComb& x) const;

  /// Antipode of T^{+,i}; the kind is read off the factors.
  PlusComb antipode(const PlusMonomial& m) const;
  PlusComb antipode(const PlusComb& x) const;

  /// Curtailed coaction hat-Delta_0 : T_1 -> T_1 (x) T^{+,0}.
  TensorElem delta_hat0(const Tree& t) const;
  TensorElem delta_hat0(const LinComb& x) const;

  /// hat-Gamma_0 on T^{+,0}. Throws BasisError on kind-1 factors.
  PlusComb gamma_hat0(const PlusMonomial& m) const;
  PlusComb gamma_hat0(const PlusComb& x) const;

  /// I^{+,i}_a(t) as a combination; empty when the factor has non-positive degree.
  PlusComb plus_factor(DegreeKind i, const MultiIndex& a, const Tree& t) const;

 private:
  const TensorElem& planted_coaction(DegreeKind i, const Tree& t) const;
  TensorElem compute_planted_coaction(DegreeKind i, const Edge& e) const;
  const PlusTensor& factor_coproduct(DegreeKind i, const PlusMonomial& m) const;
  PlusTensor compute_factor_coproduct(DegreeKind i, const PlusFactor& f) const;
  const PlusComb& factor_antipode(const PlusMonomial& m) const;
  PlusComb compute_factor_antipode(const PlusFactor& f) const;
  const TensorElem& planted_delta_hat0(const Tree& t) const;
  TensorElem compute_planted_delta_hat0(const Edge& e) const;
  const PlusComb& factor_gamma_hat0(const PlusMonomial& m) const;
  PlusComb compute_factor_gamma_hat0(const PlusFactor& f) const;

  template <class V, class F>
  const V& memo(std::unordered_map<std::string, V>& table, const std::string& key, F&& compute) const;

  DegreeParams params_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, TensorElem> coaction_[2];
  mutable std::unordered_map<std::string, PlusTensor> coproduct_[2];
  mutable std::unordered_map<std::string, PlusComb> antipode_;
  mutable std::unordered_map<std::string, TensorElem> delta_hat_;
  mutable std::unordered_map<std::string, PlusComb> gamma_hat_;
};

/// Tree-level Malliavin derivative: replaces one Xi0 by Xi1, summed over all choices.
LinComb d_xi(const Tree& t);
LinComb d_xi(const LinComb& x);

/// Drops every tree containing Xi1.
LinComb project_Q0(const LinComb& x);
/// Keeps only trees I(tau) with zero edge index, zero root polynomial and no root noise.
LinComb project_PI(const LinComb& x);

/// (f (x) Id) applied to a tensor, f: Tree -> LinComb.
template <class F>
TensorElem map_left(const TensorElem& x, F&& f) {
  TensorElem out;
  for (const auto& [k, c] : x)
    for (const auto& [t, d] : f(k.left)) out.add({t, k.right}, c * d);
  return out;
}

/// (Id (x) g) applied to a tensor, g: PlusMonomial -> PlusComb.
template <class G>
TensorElem map_right(const TensorElem& x, G&& g) {
  TensorElem out;
  for (const auto& [k, c] : x)
    for (const auto& [m, d] : g(k.right)) out.add({k.left, m}, c * d);
  return out;
}

}  // namespace rsalg
