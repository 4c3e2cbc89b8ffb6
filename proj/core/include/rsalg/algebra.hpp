#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsalg/combination.hpp"
#include "rsalg/tree.hpp"

namespace rsalg {

/// One factor I^{+,kind}_a(body) of a positive-degree monomial.
struct PlusFactor {
  DegreeKind kind = DegreeKind::Zero;
  MultiIndex index;
  Tree body;

  /// "I+_(a)[body]" for kind 0, "I+1_(a)[body]" for kind 1.
  std::string str() const;
  friend bool operator==(const PlusFactor&, const PlusFactor&) = default;
};

/// X^k prod_j I^{+,i}_{a_j}(tau_j): a basis element of the positive-degree algebra.
///
/// Factor positivity is enforced where factors are created (see plus_planted);
/// products of valid monomials are valid.
class PlusMonomial {
 public:
  PlusMonomial() = default;
  static PlusMonomial one(std::size_t dim);
  static PlusMonomial x(const MultiIndex& k);
  /// Canonicalizes; does not check positivity.
  static PlusMonomial make(MultiIndex poly, std::vector<PlusFactor> factors);

  const MultiIndex& poly() const { return poly_; }
  const std::vector<PlusFactor>& factors() const { return factors_; }
  const std::string& key() const { return key_; }
  std::size_t dim() const { return poly_.dim(); }
  bool is_one() const { return key_ == "1"; }

  friend bool operator==(const PlusMonomial& a, const PlusMonomial& b) { return a.key_ == b.key_; }
  friend std::strong_ordering operator<=>(const PlusMonomial& a, const PlusMonomial& b) {
    const int c = a.key_.compare(b.key_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  MultiIndex poly_;
  std::vector<PlusFactor> factors_;
  std::string key_ = "1";
};

using LinComb = Combination<Tree, Rational>;
using RealComb = Combination<Tree, long double>;
using PlusComb = Combination<PlusMonomial, Rational>;
using TensorElem = Combination<TensorKey<Tree, PlusMonomial>, Rational>;
using PlusTensor = Combination<TensorKey<PlusMonomial, PlusMonomial>, Rational>;
using TreeTensor = Combination<TensorKey<Tree, Tree>, Rational>;

/// I^{+,kind}_a(body), or nullopt when deg_kind(I_a body) <= 0 (the zero monomial).
std::optional<PlusMonomial> plus_planted(DegreeKind kind, const MultiIndex& a, const Tree& body,
                                         const DegreeParams& params);

/// Product in the positive-degree algebra. Throws KindMismatch on mixed kinds.
PlusMonomial mult_plus(const PlusMonomial& a, const PlusMonomial& b);

/// sum_l X^l / l! I^{+,0}_{a+l}(t), truncated by positivity.
PlusComb tilde_basis(const MultiIndex& a, const Tree& t, const DegreeParams& params);

// Lifted products.
LinComb multiply(const LinComb& a, const LinComb& b);
PlusComb multiply(const PlusComb& a, const PlusComb& b);
TensorElem multiply(const TensorElem& a, const TensorElem& b);
PlusTensor multiply(const PlusTensor& a, const PlusTensor& b);

/// Unit elements.
LinComb unit_lin(std::size_t dim);
PlusComb unit_plus(std::size_t dim);
TensorElem unit_tensor(std::size_t dim);
PlusTensor unit_plus_tensor(std::size_t dim);

/// Embedding of the polynomial part X^k into the tree algebra.
Tree as_tree(const MultiIndex& k);

/// derive(p, t): the abstract derivative D_p extended by the Leibniz rule.
LinComb derive(const MultiIndex& p, const Tree& t);
LinComb derive(const MultiIndex& p, const LinComb& x);

/// Ordered pair tensor of two combinations.
TensorElem tensor(const LinComb& a, const PlusComb& b);

}  // namespace rsalg
