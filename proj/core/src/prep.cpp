#include "rsalg/prep.hpp"

#include <fstream>
#include <sstream>

#include "rsalg/hopf.hpp"
#include "rsalg/render.hpp"
#include "rsalg/rules.hpp"

namespace rsalg {

namespace {

void validate_rule(const PrepRule& r) {
  const Tree& p = r.pattern;
  if (!p.poly().is_zero() || p.noise() != Noise::None || p.children().size() < 2)
    throw ConfigError("prep pattern must be a product of at least two planted factors: " + p.key());
  if (p.xi1_count() != 0) throw ConfigError("prep pattern may only contain Xi0: " + p.key());
  if (r.replacement.dim() != p.dim()) throw ConfigError("prep replacement has the wrong dimension");
}

// Number of ways to pick the multiset `sub` out of the multiset `all` (both sorted).
Integer embeddings(const std::vector<Edge>& all, const std::vector<Edge>& sub,
                   std::vector<Edge>& rest) {
  rest.clear();
  Integer ways = 1;
  std::size_t i = 0, j = 0;
  while (j < sub.size()) {
    std::size_t jn = j;
    while (jn < sub.size() && sub[jn] == sub[j]) ++jn;
    const std::string key = sub[j].factor_string();
    while (i < all.size() && all[i].factor_string() < key) rest.push_back(all[i++]);
    std::size_t in = i;
    while (in < all.size() && all[in] == sub[j]) ++in;
    const std::size_t have = in - i, need = jn - j;
    if (have < need) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), have, need);
    ways *= b;
    for (std::size_t k = need; k < have; ++k) rest.push_back(all[i + k]);
    i = in;
    j = jn;
  }
  while (i < all.size()) rest.push_back(all[i++]);
  return ways;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

PrepMap::PrepMap(std::vector<PrepRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {
  for (const auto& r : rules_) validate_rule(r);
}

PrepMap PrepMap::trivial() { return PrepMap(); }

PrepMap PrepMap::quasilinear(const Rational& c) {
  if (c == 0) return PrepMap({}, "qua_c");
  return PrepMap({PrepRule{parse_tree("I[Xi0]*I_(0,2)[Xi0]", 2), c, Tree::one(2)}}, "qua_c");
}

PrepMap PrepMap::preset(std::string_view name, const Rational& c) {
  if (name == "trivial") return trivial();
  if (name == "qua_c") return quasilinear(c);
  if (name == "adversarial")
    return PrepMap({PrepRule{parse_tree("I[Xi0]*I_(0,2)[Xi0]", 2), 1, parse_tree("I_(0,2)[Xi0]", 2)}},
                   "adversarial");
  throw ConfigError("unknown preparation-map preset '" + std::string(name) + "'");
}

PrepMap PrepMap::parse(std::string_view text, std::size_t dim, std::string name) {
  std::vector<PrepRule> rules;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(offset, eol - offset);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    if (!trim(line).empty()) {
      const std::size_t s1 = line.find(';');
      const std::size_t s2 = s1 == std::string_view::npos ? s1 : line.find(';', s1 + 1);
      if (s2 == std::string_view::npos)
        throw ParseError("expected 'pattern ; rational ; replacement'", offset);
      auto pattern = [&] {
        try {
          return parse_tree(line.substr(0, s1), dim);
        } catch (const ParseError& e) {
          throw ParseError("bad pattern: " + e.detail(), offset + e.position());
        }
      }();
      Rational coef;
      try {
        coef = Rational(trim(line.substr(s1 + 1, s2 - s1 - 1)));
        coef.canonicalize();
      } catch (const std::invalid_argument&) {
        throw ParseError("bad rational coefficient", offset + s1 + 1);
      }
      auto replacement = [&] {
        try {
          return parse_tree(line.substr(s2 + 1), dim);
        } catch (const ParseError& e) {
          throw ParseError("bad replacement: " + e.detail(), offset + s2 + 1 + e.position());
        }
      }();
      PrepRule r{pattern, coef, replacement};
      if (r.coefficient != 0) rules.push_back(std::move(r));
    }
    offset = eol + 1;
  }
  return PrepMap(std::move(rules), std::move(name));
}

PrepMap PrepMap::load(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open preparation-map file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), dim, path);
}

LinComb PrepMap::apply(const Tree& t) const {
  LinComb out(t);
  std::vector<Edge> rest;
  for (const auto& r : rules_) {
    const Integer ways = embeddings(t.children(), r.pattern.children(), rest);
    if (ways == 0) continue;
    const Tree remainder = Tree::make(t.poly(), t.noise(), rest);
    out.add(product(remainder, r.replacement), r.coefficient * Rational(ways));
  }
  return out;
}

LinComb PrepMap::apply(const LinComb& x) const {
  return lift_linear<Tree>(x, [&](const Tree& t) { return apply(t); });
}

bool AxiomReport::ok(std::string_view axiom) const {
  for (const auto& f : failures)
    if (f.axiom == axiom) return false;
  return true;
}

namespace {

template <class T>
void compare(AxiomReport& rep, const std::string& axiom, const Tree& t, const T& lhs, const T& rhs) {
  if (!(lhs == rhs)) rep.failures.push_back({axiom, t, render(lhs), render(rhs)});
}

TensorElem r_left(const PrepMap& R, const TensorElem& x) {
  return map_left(x, [&](const Tree& s) { return R.apply(s); });
}

}  // namespace

AxiomReport verify_axioms(const PrepMap& R, const std::vector<Tree>& t0, const Hopf& hopf) {
  AxiomReport rep;
  const std::vector<Tree> t1 = lift_T1(t0);
  const std::size_t dim = hopf.dim();

  // Triangularity of R - Id.
  for (const auto& t : t1) {
    LinComb diff = R.apply(t) - LinComb(t);
    for (const auto& [s, c] : diff) {
      const bool deg_ok = degree(s, DegreeKind::One, hopf.params()) >= degree(t, DegreeKind::One, hopf.params());
      const bool noise_ok = s.noise_count() < t.noise_count();
      if (!deg_ok || !noise_ok)
        rep.failures.push_back({"triangularity", t, render(diff),
                                std::string(deg_ok ? "" : "deg1 decreases") +
                                    (noise_ok ? "" : " noise count not reduced")});
    }
  }
  rep.checked.emplace_back("triangularity", t1.size());

  std::vector<Tree> basics{Tree::one(dim), Tree::noise(Noise::Xi0, dim), Tree::noise(Noise::Xi1, dim)};
  for (std::size_t j = 0; j < dim; ++j) basics.push_back(Tree::monomial(MultiIndex::unit(dim, j)));
  for (const auto& t : t1)
    if (t.is_planted()) basics.push_back(t);
  for (const auto& t : basics) compare(rep, "fixes-basics", t, R.apply(t), LinComb(t));
  rep.checked.emplace_back("fixes-basics", basics.size());

  for (DegreeKind i : {DegreeKind::Zero, DegreeKind::One}) {
    const std::string name = i == DegreeKind::Zero ? "R-Delta0" : "R-Delta1";
    for (const auto& t : t1)
      compare(rep, name, t, r_left(R, hopf.coaction(i, t)), hopf.coaction(i, R.apply(t)));
    rep.checked.emplace_back(name, t1.size());
  }

  for (const auto& t : t0) compare(rep, "R-DXi", t, R.apply(d_xi(t)), d_xi(R.apply(t)));
  rep.checked.emplace_back("R-DXi", t0.size());

  for (const auto& t : t1)
    compare(rep, "R-Q0", t, R.apply(project_Q0(LinComb(t))), project_Q0(R.apply(t)));
  rep.checked.emplace_back("R-Q0", t1.size());

  for (const auto& t : t1)
    compare(rep, "R-DeltaHat0", t, r_left(R, hopf.delta_hat0(t)), hopf.delta_hat0(R.apply(t)));
  rep.checked.emplace_back("R-DeltaHat0", t1.size());
  return rep;
}

AxiomReport verify_assumption2(const PrepMap& R, const std::vector<Tree>& t0) {
  AxiomReport rep;
  std::size_t n = 0;
  for (const auto& t : t0) {
    if (!t.poly().is_zero() || t.noise() != Noise::None) continue;
    int i2 = 0, other = 0;
    for (const auto& e : t.children()) {
      if (e.index.is_zero())
        continue;
      else if (e.index.dim() == 2 && e.index[0] == 0 && e.index[1] == 2)
        ++i2;
      else
        ++other;
    }
    if (i2 != 1 || other != 0) continue;
    ++n;
    const LinComb diff = R.apply(t) - LinComb(t);
    for (const auto& [s, c] : diff) {
      bool ok = s.poly().is_zero() && s.noise() == Noise::None && s.xi1_count() == 0;
      for (const auto& e : s.children()) ok = ok && e.index.is_zero();
      if (!ok) rep.failures.push_back({"assumption2", t, render(diff), s.key()});
    }
  }
  rep.checked.emplace_back("assumption2", n);
  return rep;
}

}  // namespace rsalg
