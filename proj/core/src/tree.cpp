#include "rsalg/tree.hpp"

#include <algorithm>

namespace rsalg {

namespace {

const char* noise_name(Noise n) { return n == Noise::Xi0 ? "Xi0" : "Xi1"; }

std::shared_ptr<const TreeNode> build(MultiIndex poly, Noise noise, std::vector<Edge> children) {
  auto node = std::make_shared<TreeNode>();
  const std::size_t dim = poly.dim();
  std::vector<std::pair<std::string, Edge>> keyed;
  keyed.reserve(children.size());
  for (auto& e : children) {
    if (e.index.dim() != dim || e.body.dim() != dim)
      throw std::invalid_argument("Tree: dimension mismatch between node and child");
    keyed.emplace_back(e.factor_string(), std::move(e));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  node->poly = poly;
  node->noise = noise;
  node->total_poly = poly;
  node->total_edge = MultiIndex(dim);
  node->noises = noise == Noise::None ? 0 : 1;
  node->xi1 = noise == Noise::Xi1 ? 1 : 0;

  std::string key;
  if (!poly.is_zero()) key = "X^" + poly.str();
  for (auto& [s, e] : keyed) {
    if (!key.empty()) key += '*';
    key += s;
    const Tree& b = e.body;
    node->noises += b.noise_count();
    node->xi1 += b.xi1_count();
    node->edges += 1 + b.edge_count();
    node->total_poly += b.total_poly();
    node->total_edge += e.index;
    node->total_edge += b.total_edge_index();
    node->children.push_back(std::move(e));
  }
  if (noise != Noise::None) {
    if (!key.empty()) key += '*';
    key += noise_name(noise);
  }
  node->key = key.empty() ? "1" : std::move(key);
  return node;
}

}  // namespace

std::string Edge::factor_string() const {
  if (index.is_zero()) return "I[" + body.key() + "]";
  return "I_" + index.str() + "[" + body.key() + "]";
}

Tree Tree::one(std::size_t dim) { return Tree(build(MultiIndex(dim), Noise::None, {})); }

Tree Tree::monomial(const MultiIndex& k) { return Tree(build(k, Noise::None, {})); }

Tree Tree::noise(Noise n, std::size_t dim) { return Tree(build(MultiIndex(dim), n, {})); }

Tree Tree::make(MultiIndex poly, Noise noise, std::vector<Edge> children) {
  return Tree(build(poly, noise, std::move(children)));
}

bool Tree::is_one() const {
  return node_->noise == Noise::None && node_->children.empty() && node_->poly.is_zero();
}

bool Tree::is_monomial() const { return node_->noise == Noise::None && node_->children.empty(); }

bool Tree::is_planted() const {
  return node_->noise == Noise::None && node_->children.size() == 1 && node_->poly.is_zero();
}

Tree product(const Tree& a, const Tree& b) {
  if (a.noise() != Noise::None && b.noise() != Noise::None)
    throw NoiseProduct("product of two noises at the root: " + a.key() + " * " + b.key());
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  std::vector<Edge> children = a.children();
  children.insert(children.end(), b.children().begin(), b.children().end());
  const Noise n = a.noise() != Noise::None ? a.noise() : b.noise();
  return Tree::make(a.poly() + b.poly(), n, std::move(children));
}

Tree plant(const MultiIndex& a, const Tree& t) {
  return Tree::make(MultiIndex(t.dim()), Noise::None, {Edge{a, t}});
}

Tree times_monomial(const Tree& t, const MultiIndex& k) {
  if (k.is_zero()) return t;
  return Tree::make(t.poly() + k, t.noise(), t.children());
}

Tree strip_root_poly(const Tree& t) {
  if (t.poly().is_zero()) return t;
  return Tree::make(MultiIndex(t.dim()), t.noise(), t.children());
}

Rational degree(const Tree& t, DegreeKind which, const DegreeParams& params) {
  Rational r = params.alpha * t.noise_count();
  if (which == DegreeKind::Zero) r += params.malliavin_gain() * t.xi1_count();
  r += params.scaled(t.total_poly());
  r += 2 * t.edge_count();
  r -= params.scaled(t.total_edge_index());
  r.canonicalize();
  return r;
}

Integer symmetry_factor(const Tree& t) {
  Integer s = 1;
  const auto& ch = t.children();
  std::size_t i = 0;
  while (i < ch.size()) {
    std::size_t j = i;
    while (j < ch.size() && ch[j] == ch[i]) ++j;
    const unsigned long m = j - i;
    Integer fac;
    mpz_fac_ui(fac.get_mpz_t(), m);
    Integer sub = symmetry_factor(ch[i].body);
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), sub.get_mpz_t(), m);
    s *= fac * pw;
    i = j;
  }
  return s;
}

std::string serialize(const Tree& t) { return t.key(); }

}  // namespace rsalg
