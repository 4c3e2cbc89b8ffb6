#include "rsalg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "rsalg/errors.hpp"

namespace rsalg {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  T v{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ConfigError("bad number for '" + std::string(key) + "': " + s);
    }
  } else {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw ConfigError("bad integer for '" + std::string(key) + "': " + s);
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

bool Tolerance::accepts(double a, double b) const {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  try {
    Rational q(s);
    if (q.get_den() == 0) throw std::invalid_argument(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad rational '" + s + "' (expected p/q)");
  }
}

std::pair<int, int> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  const std::size_t x = s.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("bad grid '" + s + "' (expected TxX, e.g. 48x32)");
  return {parse_number<int>("grid", std::string_view(s).substr(0, x)),
          parse_number<int>("grid", std::string_view(s).substr(x + 1))};
}

void RunConfig::set(std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "rule") {
    rule = value;
  } else if (key == "alpha") {
    alpha = parse_rational(value);
    alpha_num_.reset();
    alpha_den_.reset();
  } else if (key == "alpha_num") {
    alpha_num_ = Integer(parse_number<long>(key, value));
    const Integer den = alpha_den_ ? *alpha_den_ : (alpha ? Integer(alpha->get_den()) : Integer(1));
    alpha = Rational(*alpha_num_, den);
    alpha->canonicalize();
  } else if (key == "alpha_den") {
    alpha_den_ = Integer(parse_number<long>(key, value));
    if (*alpha_den_ == 0) throw ConfigError("alpha denominator must be nonzero");
    // Without a numerator yet, wait for alpha_num.
    if (alpha_num_ || alpha) {
      alpha = Rational(alpha_num_ ? *alpha_num_ : Integer(alpha->get_num()), *alpha_den_);
      alpha->canonicalize();
    }
  } else if (key == "d") {
    d = parse_number<int>(key, value);
  } else if (key == "scaling") {
    scaling.clear();
    for (const auto& part : split(value, ',')) scaling.push_back(parse_number<int>(key, part));
  } else if (key == "max_noises") {
    max_noises = parse_number<int>(key, value);
  } else if (key == "max_edges") {
    max_edges = parse_number<int>(key, value);
  } else if (key == "prep") {
    prep = value;
  } else if (key == "prep_c") {
    prep_c = parse_rational(value);
  } else if (key == "c_scan") {
    c_scan.clear();
    for (const auto& part : split(value, ',')) c_scan.push_back(parse_rational(part));
  } else if (key == "grid") {
    std::tie(grid_t, grid_x) = parse_grid(value);
  } else if (key == "grid_t") {
    grid_t = parse_number<int>(key, value);
  } else if (key == "grid_x") {
    grid_x = parse_number<int>(key, value);
  } else if (key == "cutoff") {
    cutoff = parse_number<double>(key, value);
  } else if (key == "stencil") {
    stencil = value == "auto" ? 0 : parse_number<int>(key, value);
    if (stencil < 0) throw ConfigError("stencil must be 'auto' or a positive half-width");
  } else if (key == "noise") {
    if (value != "trigonometric" && value != "mollified")
      throw ConfigError("noise must be 'trigonometric' or 'mollified'");
    noise = value;
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "base_points") {
    base_points = parse_number<int>(key, value);
    if (base_points < 1) throw ConfigError("base_points must be positive");
  } else if (key == "tol") {
    tol = parse_number<double>(key, value);
    if (tol < 0) throw ConfigError("tol must be non-negative");
  } else if (key == "abs_tol") {
    abs_tol = parse_number<double>(key, value);
  } else if (key == "jobs") {
    jobs = std::max(1u, parse_number<unsigned>(key, value));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    cfg.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

RunConfig RunConfig::with_default_bounds(Bounds b) const {
  RunConfig c = *this;
  if (!c.max_noises) c.max_noises = b.noises;
  if (!c.max_edges) c.max_edges = b.edges;
  return c;
}

RuleSet RunConfig::rules() const { return RuleSet::from_name(rule, noise_bound(), edge_bound()); }

DegreeParams RunConfig::params() const {
  const RuleSet r = rules();
  DegreeParams p = r.default_params();
  if (alpha_den_ && !alpha) throw ConfigError("alpha_den given without alpha_num");
  if (d && *d != p.d)
    throw ConfigError("rule set '" + r.name_str() + "' lives in d = " + std::to_string(p.d));
  if (alpha) p.alpha = *alpha;
  if (!scaling.empty()) {
    if (scaling.size() != p.dim()) throw ConfigError("scaling needs d+1 entries");
    p.scaling = scaling;
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

PrepMap RunConfig::prep_map(const Rational& c) const {
  const std::size_t dim = rules().dim();
  if (prep == "trivial" || prep == "qua_c" || prep == "adversarial") {
    if (prep != "trivial" && dim != 2) throw ConfigError("preset '" + prep + "' needs d = 1");
    return PrepMap::preset(prep, c);
  }
  return PrepMap::load(prep, dim);
}

Tolerance RunConfig::tolerance() const { return Tolerance{tol, abs_tol.value_or(1e-4 * tol)}; }

}  // namespace rsalg
