#include "preslab/manifold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "preslab/rng.hpp"

namespace preslab {

double wrap_unit(double v) {
  double w = v - std::floor(v);
  // rounding can land exactly on 1.0 for tiny negative inputs
  return w < 1.0 ? w : 0.0;
}

Point make_point1(double x) {
  Point p;
  p.dim = 1;
  p.x[0] = wrap_unit(x);
  return p;
}

Point make_point2(double x, double y) {
  Point p;
  p.dim = 2;
  p.x[0] = wrap_unit(x);
  p.x[1] = wrap_unit(y);
  return p;
}

int default_basis_size(int dim) {
  return dim == 1 ? kDefaultBasisSizeCircle : kDefaultBasisSizeTorus2;
}

TestFunctionBasis::TestFunctionBasis(int dim, int size) : dim_(dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("basis dimension must be 1 or 2");
  if (size < 1) throw std::invalid_argument("basis size must be positive");
  fns_.reserve(static_cast<std::size_t>(size));
  if (dim == 1) {
    for (int k = 1; k <= size; ++k) {
      Harmonic h;
      h.freq[0] = (k + 1) / 2;
      h.sine[0] = (k % 2 == 0);
      fns_.push_back(h);
    }
    return;
  }
  // frequency pairs (j1, j2) != (0, 0) by total degree, then lexicographic;
  // per pair the cos/sin variants with the first coordinate varying slowest
  for (int degree = 1; static_cast<int>(fns_.size()) < size; ++degree) {
    for (int j1 = 0; j1 <= degree && static_cast<int>(fns_.size()) < size; ++j1) {
      const int j2 = degree - j1;
      const int variants1 = j1 == 0 ? 1 : 2;
      const int variants2 = j2 == 0 ? 1 : 2;
      for (int v1 = 0; v1 < variants1; ++v1) {
        for (int v2 = 0; v2 < variants2; ++v2) {
          if (static_cast<int>(fns_.size()) >= size) break;
          Harmonic h;
          h.freq[0] = j1;
          h.freq[1] = j2;
          h.sine[0] = (j1 > 0 && v1 == 1);
          h.sine[1] = (j2 > 0 && v2 == 1);
          fns_.push_back(h);
        }
      }
    }
  }
}

double TestFunctionBasis::eval(int k, const Point& p) const {
  const Harmonic& h = fns_.at(static_cast<std::size_t>(k - 1));
  double value = 1.0;
  for (int c = 0; c < dim_; ++c) {
    if (h.freq[c] == 0) continue;
    const double arg = 2.0 * std::numbers::pi * h.freq[c] * p.x[c];
    value *= h.sine[c] ? std::sin(arg) : std::cos(arg);
  }
  return value;
}

double weak_distance(std::span<const double> mom_a, std::span<const double> mom_b) {
  if (mom_a.size() != mom_b.size())
    throw std::invalid_argument("weak_distance: moment vectors have different lengths");
  double dist = 0.0;
  double scale = 1.0;
  for (std::size_t k = 0; k < mom_a.size(); ++k) {
    scale *= 0.5;
    dist += scale * std::abs(mom_a[k] - mom_b[k]);
  }
  return dist;
}

double weak_metric_tail_bound(int truncation) {
  return std::ldexp(2.0, -truncation);  // 2^{-(K-1)}
}

HistogramMeasure histogram(std::span<const Point> points, std::span<const double> weights,
                           int bins_per_axis) {
  if (points.size() != weights.size())
    throw std::invalid_argument("histogram: points/weights size mismatch");
  if (points.empty()) throw std::invalid_argument("histogram: empty input");
  if (bins_per_axis < 1) throw std::invalid_argument("histogram: bins_per_axis must be >= 1");
  const int dim = points[0].dim;

  HistogramMeasure h;
  h.dim = dim;
  h.bins_per_axis = bins_per_axis;
  const std::size_t cells = dim == 1 ? static_cast<std::size_t>(bins_per_axis)
                                     : static_cast<std::size_t>(bins_per_axis) * bins_per_axis;
  h.masses.assign(cells, 0.0);

  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights[i];
    if (w < 0.0) throw std::invalid_argument("histogram: negative weight");
    std::size_t cell = 0;
    for (int c = 0; c < dim; ++c) {
      auto b = static_cast<int>(points[i].x[c] * bins_per_axis);
      if (b >= bins_per_axis) b = bins_per_axis - 1;
      cell = cell * static_cast<std::size_t>(bins_per_axis) + static_cast<std::size_t>(b);
    }
    h.masses[cell] += w;
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("histogram: weights are all zero");
  for (double& m : h.masses) m /= total;
  return h;
}

std::vector<Point> sample_uniform(int dim, std::int64_t count, std::uint64_t seed) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("sample_uniform: dim must be 1 or 2");
  if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");
  std::vector<Point> pts(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    Point p;
    p.dim = dim;
    for (int c = 0; c < dim; ++c)
      p.x[c] = uniform01(seed, static_cast<std::uint64_t>(i) * dim + static_cast<std::uint64_t>(c));
    pts[static_cast<std::size_t>(i)] = p;
  }
  return pts;
}

}  // namespace preslab
