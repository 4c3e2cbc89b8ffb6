#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "rsalg/multi_index.hpp"

namespace rsalg {

/// Working precision of the grid computations. Expansions such as the
/// pre-model contraction cancel terms ~1e9 times larger than their sum, so
/// double precision alone would sit right at the 1e-12 comparison floor.
using Real = long double;
using Field = std::vector<Real>;
/// Integer grid coordinates; entry 0 is time.
using Point = std::array<int, MultiIndex::kMaxDim>;

/// Periodic grid on the unit torus [0,1)^{1+d}.
///
/// Coordinates are literal (index * spacing), never wrapped to a minimal
/// image, so polynomial recentring is exact in the algebra.
class Grid {
 public:
  /// n_t time points, n_x points in each of the d space directions.
  Grid(int n_t, int n_x, int d);

  std::size_t dim() const { return n_.size(); }
  std::size_t size() const { return size_; }
  int extent(std::size_t axis) const { return n_[axis]; }
  Real spacing(std::size_t axis) const { return Real(1) / n_[axis]; }
  /// Quadrature weight: product of spacings.
  Real weight() const { return weight_; }

  std::size_t linear(const Point& p) const;
  Point point(std::size_t linear) const;
  Real coord(const Point& p, std::size_t axis) const { return Real(p[axis]) / n_[axis]; }
  /// Linear index of p shifted by `offset`, wrapped periodically.
  std::size_t shifted(std::size_t linear, const Point& offset) const;

  /// (y - x)^k / k! with literal coordinates.
  Real taylor_monomial(const Point& y, const Point& x, const MultiIndex& k) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

 private:
  std::vector<int> n_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
  Real weight_ = 1;
};

/// Writes "# dims n_t n_x... spacings h_t h_x..." then one value per line, row-major.
void dump_field(std::ostream& out, const Grid& g, const Field& f);

/// Central first-difference stencil of half-width m along one axis. It is
/// exact on polynomials of degree <= 2m.
Field central_difference(const Grid& g, const Field& f, std::size_t axis, int m = 1);
/// The stencil applied a_j times along each axis j.
Field stencil_power(const Grid& g, Field f, const MultiIndex& a, int m = 1);

/// K_a = D^a K_0 for one base kernel, all generated by the same stencil.
///
/// K_0 is a heat kernel multiplied by a smooth cutoff of parabolic radius
/// `radius`; derivative kernels are cached, and the cache is safe for
/// concurrent readers. The stencil half-width bounds the polynomial degree on
/// which discrete and abstract derivatives agree (2 * half_width).
class KernelFamily {
 public:
  static constexpr int kDefaultHalfWidth = 4;

  KernelFamily(const Grid& g, double radius, int half_width = kDefaultHalfWidth);
  /// Uses a caller-supplied base kernel (values on the grid, origin at index 0).
  KernelFamily(const Grid& g, Field base, int half_width = kDefaultHalfWidth);

  const Grid& grid() const { return grid_; }
  int half_width() const { return half_width_; }
  const Field& dense(const MultiIndex& a) const;
  /// The family's stencil applied to an arbitrary field.
  Field derivative(const MultiIndex& a, const Field& f) const;

  /// (K_a * f)(y) for every y.
  Field convolve(const MultiIndex& a, const Field& f) const;
  /// (K_a * f)(y) at a single point.
  Real convolve_at(const MultiIndex& a, const Field& f, const Point& y) const;

 private:
  struct Sparse {
    Field dense;
    std::vector<Point> offsets;
    std::vector<Real> values;
  };
  const Sparse& get(const MultiIndex& a) const;

  Grid grid_;
  Field base_;
  int half_width_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, std::unique_ptr<Sparse>> cache_;
};

/// The two driving fields: xi for Xi0 and dxi for Xi1.
struct NoisePair {
  Field xi;
  Field dxi;

  /// Fixed trigonometric polynomials.
  static NoisePair trigonometric(const Grid& g);
  /// White noise smoothed by a periodic Gaussian of width `width` (grid units), seeded.
  static NoisePair mollified(const Grid& g, std::uint64_t seed, double width = 1.5);
  /// (xi + t dxi, dxi).
  NoisePair perturbed(Real t) const;
};

}  // namespace rsalg
