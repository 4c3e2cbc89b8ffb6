#pragma once

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rsalg/degree.hpp"
#include "rsalg/errors.hpp"
#include "rsalg/multi_index.hpp"

namespace rsalg {

enum class Noise : std::uint8_t { None = 0, Xi0 = 1, Xi1 = 2 };

struct TreeNode;
struct Edge;

/// Decorated non-planar rooted tree X^k Xi prod_i I_{a_i}(tau_i) in canonical form.
///
/// Immutable value type; copies share the underlying node. Equality and
/// ordering are those of the canonical serialization.
class Tree {
 public:
  /// The empty product 1 in dimension `dim` (= d+1).
  static Tree one(std::size_t dim);
  static Tree monomial(const MultiIndex& k);
  static Tree noise(Noise n, std::size_t dim);
  /// Canonicalizes the child multiset.
  static Tree make(MultiIndex poly, Noise noise, std::vector<Edge> children);

  const MultiIndex& poly() const;
  Noise noise() const;
  const std::vector<Edge>& children() const;
  const std::string& key() const;
  std::size_t dim() const;

  int noise_count() const;
  int xi1_count() const;
  int edge_count() const;
  /// Sum of node polynomial decorations over the whole tree.
  const MultiIndex& total_poly() const;
  /// Sum of edge indices over the whole tree.
  const MultiIndex& total_edge_index() const;

  bool is_one() const;
  /// Pure X^k (includes 1).
  bool is_monomial() const;
  /// Exactly one edge at the root, zero root polynomial and no root noise.
  bool is_planted() const;

  friend bool operator==(const Tree& a, const Tree& b);
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);

 private:
  explicit Tree(std::shared_ptr<const TreeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TreeNode> node_;
};

/// Planted factor I_a(body) hanging off a node.
struct Edge {
  MultiIndex index;
  Tree body;

  /// "I[body]" for the zero index, "I_(a)[body]" otherwise.
  std::string factor_string() const;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TreeNode {
  MultiIndex poly;
  Noise noise = Noise::None;
  std::vector<Edge> children;
  std::string key;
  int noises = 0;
  int xi1 = 0;
  int edges = 0;
  MultiIndex total_poly;
  MultiIndex total_edge;
};

inline const MultiIndex& Tree::poly() const { return node_->poly; }
inline Noise Tree::noise() const { return node_->noise; }
inline const std::vector<Edge>& Tree::children() const { return node_->children; }
inline const std::string& Tree::key() const { return node_->key; }
inline std::size_t Tree::dim() const { return node_->poly.dim(); }
inline int Tree::noise_count() const { return node_->noises; }
inline int Tree::xi1_count() const { return node_->xi1; }
inline int Tree::edge_count() const { return node_->edges; }
inline const MultiIndex& Tree::total_poly() const { return node_->total_poly; }
inline const MultiIndex& Tree::total_edge_index() const { return node_->total_edge; }

inline bool operator==(const Tree& a, const Tree& b) {
  return a.node_ == b.node_ || a.node_->key == b.node_->key;
}
inline std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const int c = a.node_->key.compare(b.node_->key);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

/// Root-identifying product. Throws NoiseProduct if both roots carry a noise.
Tree product(const Tree& a, const Tree& b);
/// I_a(t): new root with zero decoration and no noise.
Tree plant(const MultiIndex& a, const Tree& t);
/// Root-level X^k factor multiplied in.
Tree times_monomial(const Tree& t, const MultiIndex& k);
/// The tree with its root decoration set to zero.
Tree strip_root_poly(const Tree& t);

/// deg_j(t); exact.
Rational degree(const Tree& t, DegreeKind which, const DegreeParams& params);
/// Number of noises of either kind.
inline int noise_count(const Tree& t) { return t.noise_count(); }
/// Number of decoration-preserving automorphisms.
Integer symmetry_factor(const Tree& t);

std::string serialize(const Tree& t);
/// Parses the tree grammar; `dim` is d+1. Throws ParseError.
Tree parse_tree(std::string_view text, std::size_t dim);

}  // namespace rsalg
