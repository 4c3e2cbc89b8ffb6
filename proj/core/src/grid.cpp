#include "rsalg/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>

#include "rsalg/errors.hpp"

namespace rsalg {

Grid::Grid(int n_t, int n_x, int d) {
  if (d < 1 || d + 1 > static_cast<int>(MultiIndex::kMaxDim))
    throw ConfigError("grid: spatial dimension must be between 1 and 3");
  if (n_t < 4 || n_x < 4) throw ConfigError("grid: need at least 4 points per direction");
  n_.assign(d + 1, n_x);
  n_[0] = n_t;
  stride_.assign(n_.size(), 1);
  for (std::size_t a = n_.size(); a-- > 0;) {
    stride_[a] = size_;
    size_ *= static_cast<std::size_t>(n_[a]);
    weight_ /= n_[a];
  }
}

std::size_t Grid::linear(const Point& p) const {
  std::size_t l = 0;
  for (std::size_t a = 0; a < n_.size(); ++a) l += static_cast<std::size_t>(p[a]) * stride_[a];
  return l;
}

Point Grid::point(std::size_t l) const {
  Point p{};
  for (std::size_t a = 0; a < n_.size(); ++a) {
    p[a] = static_cast<int>(l / stride_[a]);
    l %= stride_[a];
  }
  return p;
}

std::size_t Grid::shifted(std::size_t l, const Point& offset) const {
  std::size_t out = 0;
  for (std::size_t a = 0; a < n_.size(); ++a) {
    const int c = static_cast<int>(l / stride_[a]);
    l %= stride_[a];
    int s = (c + offset[a]) % n_[a];
    if (s < 0) s += n_[a];
    out += static_cast<std::size_t>(s) * stride_[a];
  }
  return out;
}

Real Grid::taylor_monomial(const Point& y, const Point& x, const MultiIndex& k) const {
  Real v = 1;
  for (std::size_t a = 0; a < n_.size(); ++a) {
    const Real dy = Real(y[a] - x[a]) / n_[a];
    for (int j = 1; j <= k[a]; ++j) v *= dy / j;
  }
  return v;
}

void dump_field(std::ostream& out, const Grid& g, const Field& f) {
  out << "# dims";
  for (std::size_t a = 0; a < g.dim(); ++a) out << ' ' << g.extent(a);
  out << " spacings";
  for (std::size_t a = 0; a < g.dim(); ++a) out << ' ' << g.spacing(a);
  out << '\n';
  const auto old = out.precision(21);
  for (Real v : f) out << v << '\n';
  out.precision(old);
}

Field central_difference(const Grid& g, const Field& f, std::size_t axis, int m) {
  if (m < 1 || 2 * m >= g.extent(axis)) throw ConfigError("stencil half-width does not fit the grid");
  // c_j = 2 (-1)^{j+1} (m!)^2 / (j (m-j)! (m+j)!)
  std::vector<Real> c(m + 1, 0);
  for (int j = 1; j <= m; ++j) {
    Real v = Real(2) / j;
    for (int k = 1; k <= m; ++k) v *= k;
    for (int k = 1; k <= m; ++k) v *= k;
    for (int k = 1; k <= m - j; ++k) v /= k;
    for (int k = 1; k <= m + j; ++k) v /= k;
    c[j] = (j % 2 == 1 ? v : -v) * g.extent(axis) / 2;
  }
  // Walk the field as (outer, n, inner) blocks along `axis`.
  const std::size_t n = static_cast<std::size_t>(g.extent(axis));
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < g.dim(); ++a) inner *= static_cast<std::size_t>(g.extent(a));
  const std::size_t outer = f.size() / (n * inner);
  Field out(f.size(), 0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < n; ++i) {
      Real* dst = &out[(o * n + i) * inner];
      for (int j = 1; j <= m; ++j) {
        const Real* fwd = &f[(o * n + (i + j) % n) * inner];
        const Real* bwd = &f[(o * n + (i + n - j) % n) * inner];
        for (std::size_t r = 0; r < inner; ++r) dst[r] += c[j] * (fwd[r] - bwd[r]);
      }
    }
  return out;
}

Field stencil_power(const Grid& g, Field f, const MultiIndex& a, int m) {
  for (std::size_t axis = 0; axis < g.dim(); ++axis)
    for (int j = 0; j < a[axis]; ++j) f = central_difference(g, f, axis, m);
  return f;
}

namespace {

Field heat_kernel(const Grid& g, double radius) {
  if (!(radius > 0) || radius >= 0.5) throw ConfigError("kernel cutoff radius must lie in (0, 0.5)");
  const Real d = static_cast<Real>(g.dim() - 1);
  Field k(g.size(), 0);
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Point p = g.point(l);
    // Kernel offsets use the minimal periodic image.
    auto wrap = [&](std::size_t a) {
      int c = p[a];
      if (2 * c >= g.extent(a)) c -= g.extent(a);
      return Real(c) / g.extent(a);
    };
    const Real t = wrap(0);
    if (t <= 0) continue;
    Real r2 = 0;
    for (std::size_t a = 1; a < g.dim(); ++a) r2 += wrap(a) * wrap(a);
    const Real rho = std::max(std::sqrt(t), std::sqrt(r2)) / radius;
    if (rho >= 1) continue;
    const Real cutoff = std::exp(1 - 1 / (1 - rho * rho));
    k[l] = cutoff * std::exp(-r2 / (4 * t)) / std::pow(4 * std::numbers::pi_v<Real> * t, d / 2);
  }
  return k;
}

}  // namespace

KernelFamily::KernelFamily(const Grid& g, double radius, int half_width)
    : KernelFamily(g, heat_kernel(g, radius), half_width) {}

KernelFamily::KernelFamily(const Grid& g, Field base, int half_width)
    : grid_(g), base_(std::move(base)), half_width_(half_width) {
  if (base_.size() != grid_.size()) throw ConfigError("base kernel does not match the grid size");
  for (std::size_t a = 0; a < grid_.dim(); ++a)
    if (half_width_ < 1 || 2 * half_width_ >= grid_.extent(a))
      throw ConfigError("stencil half-width does not fit the grid");
}

Field KernelFamily::derivative(const MultiIndex& a, const Field& f) const {
  return stencil_power(grid_, f, a, half_width_);
}

const KernelFamily::Sparse& KernelFamily::get(const MultiIndex& a) const {
  if (a.dim() != grid_.dim()) throw ConfigError("kernel derivative index has the wrong dimension");
  const std::string key = a.str();
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }
  auto s = std::make_unique<Sparse>();
  s->dense = stencil_power(grid_, base_, a, half_width_);
  for (std::size_t l = 0; l < s->dense.size(); ++l)
    if (s->dense[l] != 0.0) {
      s->offsets.push_back(grid_.point(l));
      s->values.push_back(s->dense[l]);
    }
  std::unique_lock lock(mu_);
  return *cache_.try_emplace(key, std::move(s)).first->second;
}

const Field& KernelFamily::dense(const MultiIndex& a) const { return get(a).dense; }

Field KernelFamily::convolve(const MultiIndex& a, const Field& f) const {
  const Sparse& k = get(a);
  // Rows run along the last axis; the leading axes are shifted row by row
  // and the last one through two contiguous segments.
  const std::size_t last = grid_.dim() - 1;
  const std::size_t n = static_cast<std::size_t>(grid_.extent(last));
  const std::size_t rows = grid_.size() / n;
  Field out(grid_.size(), 0);
  for (std::size_t j = 0; j < k.offsets.size(); ++j) {
    Point lead{};
    for (std::size_t ax = 0; ax < last; ++ax) lead[ax] = -k.offsets[j][ax];
    const std::size_t s = static_cast<std::size_t>(k.offsets[j][last]);
    const Real w = k.values[j] * grid_.weight();
    for (std::size_t r = 0; r < rows; ++r) {
      Real* dst = &out[r * n];
      const Real* src = &f[grid_.shifted(r * n, lead)];
      // dst[i] += w src[i - s mod n]
      for (std::size_t i = 0; i < s; ++i) dst[i] += w * src[i + n - s];
      for (std::size_t i = s; i < n; ++i) dst[i] += w * src[i - s];
    }
  }
  return out;
}

Real KernelFamily::convolve_at(const MultiIndex& a, const Field& f, const Point& y) const {
  const Sparse& k = get(a);
  const std::size_t ly = grid_.linear(y);
  Real s = 0;
  for (std::size_t j = 0; j < k.offsets.size(); ++j) {
    Point neg{};
    for (std::size_t ax = 0; ax < grid_.dim(); ++ax) neg[ax] = -k.offsets[j][ax];
    s += k.values[j] * f[grid_.shifted(ly, neg)];
  }
  return s * grid_.weight();
}

NoisePair NoisePair::trigonometric(const Grid& g) {
  constexpr Real tau = 2 * std::numbers::pi_v<Real>;
  NoisePair n{Field(g.size()), Field(g.size())};
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Point p = g.point(l);
    const Real t = g.coord(p, 0);
    Real s = 0;
    for (std::size_t a = 1; a < g.dim(); ++a) s += g.coord(p, a) * static_cast<Real>(a);
    n.xi[l] = std::sin(tau * s) + 0.5 * std::cos(tau * (t + 2 * s)) + 0.25 * std::sin(tau * (3 * s - 2 * t));
    n.dxi[l] = std::cos(tau * (3 * s - t)) + 0.5 * std::sin(tau * (2 * t + s)) - 0.3 * std::cos(tau * 2 * s);
  }
  return n;
}

NoisePair NoisePair::mollified(const Grid& g, std::uint64_t seed, double width) {
  if (!(width > 0)) throw ConfigError("mollifier width must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Field bump(g.size(), 0);
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Point p = g.point(l);
    Real r2 = 0;
    for (std::size_t a = 0; a < g.dim(); ++a) {
      int c = p[a];
      if (2 * c >= g.extent(a)) c -= g.extent(a);
      r2 += static_cast<Real>(c) * c;
    }
    bump[l] = std::exp(-r2 / (2 * width * width));
  }
  Real mass = 0;
  for (Real v : bump) mass += v;
  for (Real& v : bump) v /= mass * g.weight();
  KernelFamily smooth(g, bump);
  const Real scale = 1 / std::sqrt(g.weight());
  auto sample = [&] {
    Field w(g.size());
    for (Real& v : w) v = normal(rng) * scale;
    return smooth.convolve(MultiIndex(g.dim()), w);
  };
  NoisePair n;
  n.xi = sample();
  n.dxi = sample();
  return n;
}

NoisePair NoisePair::perturbed(Real t) const {
  NoisePair n{xi, dxi};
  for (std::size_t l = 0; l < xi.size(); ++l) n.xi[l] += t * dxi[l];
  return n;
}

}  // namespace rsalg
