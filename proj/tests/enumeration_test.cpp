#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rsalg/hopf.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"

namespace rsalg {
namespace {

// Brute force: every tree of at most `budget` edges plus noise leaves and at
// most `noises` noises, over all kernel types, with no shape restriction.
// The rule set only enters through conforms().
class Oracle {
 public:
  Oracle(std::size_t dim, std::vector<MultiIndex> kernels, int noises)
      : dim_(dim), kernels_(std::move(kernels)), noises_(noises) {}

  const std::set<Tree>& upto(int budget) {
    if (auto it = memo_.find(budget); it != memo_.end()) return it->second;
    std::vector<Edge> planted;
    if (budget >= 1)
      for (const auto& body : upto(budget - 1))
        for (const auto& a : kernels_) planted.push_back({a, body});
    std::set<Tree> out;
    for (Noise root : {Noise::None, Noise::Xi0}) {
      std::vector<Edge> chosen;
      const int cost = root == Noise::Xi0 ? 1 : 0;
      extend(planted, 0, budget - cost, noises_ - cost, root, chosen, out);
    }
    return memo_[budget] = std::move(out);
  }

 private:
  static int size(const Tree& t) { return t.edge_count() + t.noise_count(); }

  void extend(const std::vector<Edge>& planted, std::size_t from, int budget, int noises, Noise root,
              std::vector<Edge>& chosen, std::set<Tree>& out) {
    if (budget < 0 || noises < 0) return;
    out.insert(Tree::make(MultiIndex(dim_), root, chosen));
    for (std::size_t j = from; j < planted.size(); ++j) {
      chosen.push_back(planted[j]);
      extend(planted, j, budget - 1 - size(planted[j].body), noises - planted[j].body.noise_count(), root, chosen,
             out);
      chosen.pop_back();
    }
  }

  std::size_t dim_;
  std::vector<MultiIndex> kernels_;
  int noises_;
  std::map<int, std::set<Tree>> memo_;
};

std::set<Tree> brute_force(const RuleSet& rules) {
  std::vector<MultiIndex> kernels{MultiIndex(rules.dim())};
  if (rules.dim() == 2) kernels.insert(kernels.end(), {MultiIndex{0, 1}, MultiIndex{0, 2}, MultiIndex{1, 0}});
  Oracle oracle(rules.dim(), kernels, rules.max_noises);
  std::set<Tree> out;
  for (const auto& t : oracle.upto(rules.max_edges))
    if (rules.conforms(t)) out.insert(t);
  return out;
}

struct Bounds {
  const char* rule;
  int noises, edges;
};

class EnumerationVsBruteForce : public testing::TestWithParam<Bounds> {};

TEST_P(EnumerationVsBruteForce, SameTrees) {
  const auto [rule, noises, edges] = GetParam();
  const RuleSet rules = RuleSet::from_name(rule, noises, edges);
  const std::vector<Tree> got = enumerate_T0(rules);
  const std::set<Tree> want = brute_force(rules);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  EXPECT_EQ(std::set<Tree>(got.begin(), got.end()).size(), got.size()) << "duplicates";
  std::vector<std::string> missing, extra;
  for (const auto& t : want)
    if (!std::binary_search(got.begin(), got.end(), t)) missing.push_back(serialize(t));
  for (const auto& t : got)
    if (!want.count(t)) extra.push_back(serialize(t));
  EXPECT_TRUE(missing.empty()) << missing.size() << " missing, first " << missing.front();
  EXPECT_TRUE(extra.empty()) << extra.size() << " extra, first " << extra.front();
}

INSTANTIATE_TEST_SUITE_P(Rules, EnumerationVsBruteForce,
                         testing::Values(Bounds{"qua", 2, 5}, Bounds{"qua_c", 2, 5}, Bounds{"gkpz", 2, 5},
                                         Bounds{"phi43", 2, 5}, Bounds{"qua_c", 3, 5}, Bounds{"gkpz", 3, 5},
                                         Bounds{"phi43", 4, 9}),
                         [](const auto& info) {
                           return std::string(info.param.rule) + "_" + std::to_string(info.param.noises) + "_" +
                                  std::to_string(info.param.edges);
                         });

std::set<std::string> texts(const std::vector<Tree>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(serialize(t));
  return out;
}

// Listed by hand from the node grammars.
TEST(Enumeration, Phi43SmallBounds) {
  EXPECT_EQ(texts(enumerate_T0(RuleSet::from_name("phi43", 2, 5))),
            (std::set<std::string>{"Xi0", "I[Xi0]", "I[Xi0]*I[Xi0]", "I[I[Xi0]]", "I[I[Xi0]]*I[Xi0]",
                                   "I[I[Xi0]*I[Xi0]]", "I[I[I[Xi0]]]", "I[I[I[I[Xi0]]]]"}));
}

TEST(Enumeration, QuasilinearSmallBounds) {
  EXPECT_EQ(texts(enumerate_T0(RuleSet::from_name("qua", 2, 5))),
            (std::set<std::string>{"Xi0", "I_(0,2)[Xi0]", "I_(0,2)[I_(0,2)[Xi0]]", "I_(0,2)[I_(0,2)[I_(0,2)[Xi0]]]",
                                   "I_(0,2)[I_(0,2)[I_(0,2)[I_(0,2)[Xi0]]]]", "I[Xi0]*I_(0,2)[Xi0]",
                                   "I[I_(0,2)[Xi0]]*I_(0,2)[Xi0]", "I[Xi0]*I_(0,2)[I_(0,2)[Xi0]]",
                                   "I_(0,2)[I[Xi0]*I_(0,2)[Xi0]]"}));
}

TEST(Enumeration, CompleteQuasilinearContainsTheEmptyProduct) {
  const auto t0 = enumerate_T0(RuleSet::from_name("qua_c", 2, 5));
  EXPECT_TRUE(std::binary_search(t0.begin(), t0.end(), Tree::one(2)));
  const auto plain = enumerate_T0(RuleSet::from_name("qua", 2, 5));
  for (const auto& t : plain) EXPECT_TRUE(std::binary_search(t0.begin(), t0.end(), t)) << serialize(t);
}

TEST(Enumeration, MonotoneInBounds) {
  for (const char* rule : {"qua_c", "gkpz", "phi43"}) {
    const auto small = enumerate_T0(RuleSet::from_name(rule, 2, 5));
    const auto big = enumerate_T0(RuleSet::from_name(rule, 3, 6));
    for (const auto& t : small) EXPECT_TRUE(std::binary_search(big.begin(), big.end(), t)) << rule;
    EXPECT_LT(small.size(), big.size()) << rule;
  }
}

TEST(Enumeration, CapRaisesBoundsTooLarge) {
  RuleSet rules = RuleSet::from_name("gkpz", 3, 8);
  rules.cap = 50;
  EXPECT_THROW(enumerate_T0(rules), BoundsTooLarge);
}

TEST(Enumeration, RejectsUnknownRule) { EXPECT_THROW(RuleSet::from_name("kdv", 2, 5), ConfigError); }

// Property: T1 is T0 plus exactly the trees reached by one Xi0 -> Xi1 swap.
TEST(Lift, AddsSingleReplacements) {
  for (const char* rule : {"qua_c", "gkpz", "phi43"}) {
    const auto t0 = enumerate_T0(RuleSet::from_name(rule, 3, 6));
    std::set<Tree> expected(t0.begin(), t0.end());
    for (const auto& t : t0)
      for (const auto& [s, c] : d_xi(t)) {
        EXPECT_GT(c, 0);
        expected.insert(s);
      }
    const auto t1 = lift_T1(t0);
    EXPECT_EQ(std::set<Tree>(t1.begin(), t1.end()), expected) << rule;
    for (const auto& t : t1) EXPECT_LE(t.xi1_count(), 1);
  }
}

}  // namespace
}  // namespace rsalg
