#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace preslab {

// Point on the flat torus [0,1)^d, d in {1,2}. Coordinates wrap on construction.
struct Point {
  std::array<double, 2> x{0.0, 0.0};
  int dim = 1;
};

double wrap_unit(double v);
Point make_point1(double x);
Point make_point2(double x, double y);

// Ordered family of unit-sup-norm harmonics used as weak-topology coordinates.
// On the circle: cos(2*pi*j*x), sin(2*pi*j*x) with increasing j, cosine first.
// On the 2-torus: products of single-coordinate harmonics, frequency pairs
// enumerated by total degree then lexicographically, cosine before sine.
class TestFunctionBasis {
 public:
  TestFunctionBasis(int dim, int size);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(fns_.size()); }

  // k is 1-based, matching the g_k naming.
  double eval(int k, const Point& p) const;

 private:
  struct Harmonic {
    std::array<int, 2> freq{0, 0};
    std::array<bool, 2> sine{false, false};
  };
  int dim_;
  std::vector<Harmonic> fns_;
};

inline constexpr int kDefaultBasisSizeCircle = 8;
inline constexpr int kDefaultBasisSizeTorus2 = 12;

int default_basis_size(int dim);

// Weighted moment metric: sum_k 2^{-k} |a_k - b_k|. Compatible with the weak
// star topology when the moments come from the basis above.
double weak_distance(std::span<const double> mom_a, std::span<const double> mom_b);

// Contribution bound of the discarded tail beyond K terms.
double weak_metric_tail_bound(int truncation);

struct HistogramMeasure {
  int dim = 1;
  int bins_per_axis = 1;
  std::vector<double> masses;  // size bins_per_axis^dim, row-major by axis, sums to 1
};

HistogramMeasure histogram(std::span<const Point> points, std::span<const double> weights,
                           int bins_per_axis);

std::vector<Point> sample_uniform(int dim, std::int64_t count, std::uint64_t seed);

}  // namespace preslab
