#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "preslab/manifold.hpp"
#include "preslab/reduce.hpp"
#include "preslab/rng.hpp"

using namespace preslab;

TEST_CASE("uniform sampling is deterministic in (seed, index)") {
  const auto a = sample_uniform(1, 3, 987);
  const auto b = sample_uniform(1, 3, 987);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x[0] == b[i].x[0]);
  // a different seed moves every point
  const auto c = sample_uniform(1, 3, 988);
  CHECK(a[0].x[0] != c[0].x[0]);
}

TEST_CASE("uniform sample mean matches the volume") {
  const auto pts = sample_uniform(1, 100000, 2024);
  double mean = 0.0;
  for (const Point& p : pts) mean += p.x[0];
  mean /= static_cast<double>(pts.size());
  CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("single 2-d sample lies in the unit square") {
  const auto pts = sample_uniform(2, 1, 5);
  REQUIRE(pts.size() == 1);
  for (int c = 0; c < 2; ++c) {
    CHECK(pts[0].x[c] >= 0.0);
    CHECK(pts[0].x[c] < 1.0);
  }
}

TEST_CASE("points wrap modulo one on construction") {
  CHECK(make_point1(1.25).x[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(make_point1(-0.25).x[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(make_point1(-1e-18).x[0] < 1.0);  // rounding must not land on 1.0
  CHECK(make_point2(2.5, -0.5).x[1] == doctest::Approx(0.5));
}

TEST_CASE("weak distance of identical vectors is zero") {
  const std::vector<double> m = {0.2, -0.3, 0.0, 1.0};
  CHECK(weak_distance(m, m) == 0.0);
}

TEST_CASE("weak distance between the point mass at 0 and the volume") {
  // dirac at 0: cos moments 1, sin moments 0; volume: all moments 0
  std::vector<double> dirac(8, 0.0), volume(8, 0.0);
  for (int k = 1; k <= 8; k += 2) dirac[static_cast<std::size_t>(k - 1)] = 1.0;
  CHECK(weak_distance(dirac, volume) == doctest::Approx(85.0 / 128.0).epsilon(1e-15));
}

TEST_CASE("weak distance stays below the crude bound for unit moments") {
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(12), b(12);
    for (int k = 0; k < 12; ++k) {
      a[static_cast<std::size_t>(k)] = 2.0 * uniform01(31, ctr++) - 1.0;
      b[static_cast<std::size_t>(k)] = 2.0 * uniform01(31, ctr++) - 1.0;
    }
    CHECK(weak_distance(a, b) <= 2.0);
  }
}

TEST_CASE("weak distance length mismatch is rejected") {
  const std::vector<double> a(4, 0.0), b(5, 0.0);
  CHECK_THROWS_AS(weak_distance(a, b), std::invalid_argument);
}

TEST_CASE("weak metric tail bound") {
  CHECK(weak_metric_tail_bound(8) == doctest::Approx(std::pow(2.0, -7)).epsilon(1e-15));
}

TEST_CASE("basis functions have unit sup norm") {
  for (int dim = 1; dim <= 2; ++dim) {
    const TestFunctionBasis basis(dim, default_basis_size(dim));
    const auto pts = sample_uniform(dim, 10000, 77);
    for (const Point& p : pts)
      for (int k = 1; k <= basis.size(); ++k) CHECK(std::abs(basis.eval(k, p)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("circle basis ordering: cos before sin, increasing frequency") {
  const TestFunctionBasis basis(1, 8);
  const Point p = make_point1(0.2);
  CHECK(basis.eval(1, p) == doctest::Approx(std::cos(2 * M_PI * 0.2)).epsilon(1e-15));
  CHECK(basis.eval(2, p) == doctest::Approx(std::sin(2 * M_PI * 0.2)).epsilon(1e-15));
  CHECK(basis.eval(3, p) == doctest::Approx(std::cos(4 * M_PI * 0.2)).epsilon(1e-15));
  CHECK(basis.eval(8, p) == doctest::Approx(std::sin(8 * M_PI * 0.2)).epsilon(1e-15));
}

TEST_CASE("torus basis starts with the degree-one harmonics") {
  const TestFunctionBasis basis(2, 12);
  const Point p = make_point2(0.3, 0.15);
  // degree 1: pair (0,1) then (1,0)
  CHECK(basis.eval(1, p) == doctest::Approx(std::cos(2 * M_PI * 0.15)).epsilon(1e-15));
  CHECK(basis.eval(2, p) == doctest::Approx(std::sin(2 * M_PI * 0.15)).epsilon(1e-15));
  CHECK(basis.eval(3, p) == doctest::Approx(std::cos(2 * M_PI * 0.3)).epsilon(1e-15));
  CHECK(basis.eval(4, p) == doctest::Approx(std::sin(2 * M_PI * 0.3)).epsilon(1e-15));
  // degree 2 starts with (0,2), then the (1,1) products
  CHECK(basis.eval(5, p) == doctest::Approx(std::cos(4 * M_PI * 0.15)).epsilon(1e-15));
  CHECK(basis.eval(7, p) ==
        doctest::Approx(std::cos(2 * M_PI * 0.3) * std::cos(2 * M_PI * 0.15)).epsilon(1e-15));
  CHECK(basis.eval(8, p) ==
        doctest::Approx(std::cos(2 * M_PI * 0.3) * std::sin(2 * M_PI * 0.15)).epsilon(1e-15));
}

TEST_CASE("metric axioms hold on random truncated moment vectors") {
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(8), b(8), c(8);
    for (int k = 0; k < 8; ++k) {
      a[static_cast<std::size_t>(k)] = 2.0 * uniform01(99, ctr++) - 1.0;
      b[static_cast<std::size_t>(k)] = 2.0 * uniform01(99, ctr++) - 1.0;
      c[static_cast<std::size_t>(k)] = 2.0 * uniform01(99, ctr++) - 1.0;
    }
    const double dab = weak_distance(a, b);
    CHECK(dab >= 0.0);
    CHECK(dab == weak_distance(b, a));
    CHECK(dab <= weak_distance(a, c) + weak_distance(c, b) + 1e-15);
    if (dab == 0.0)
      for (int k = 0; k < 8; ++k) CHECK(a[static_cast<std::size_t>(k)] == b[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("histogram: single point carries all mass") {
  const std::vector<Point> pts = {make_point1(0.31)};
  const std::vector<double> w = {1.0};
  const HistogramMeasure h = histogram(pts, w, 10);
  CHECK(h.masses[3] == 1.0);
}

TEST_CASE("histogram: weights in a shared cell add up") {
  const std::vector<Point> pts = {make_point1(0.11), make_point1(0.12)};
  const std::vector<double> w = {1.0, 3.0};
  const HistogramMeasure h = histogram(pts, w, 10);
  CHECK(h.masses[1] == 1.0);
}

TEST_CASE("histogram of uniform samples is flat") {
  const auto pts = sample_uniform(1, 100000, 4);
  const std::vector<double> w(pts.size(), 1.0);
  const HistogramMeasure h = histogram(pts, w, 16);
  for (double m : h.masses) CHECK(std::abs(m - 1.0 / 16.0) < 0.01);
}

TEST_CASE("histogram masses sum to one for random weighted inputs") {
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = trial % 2 + 1;
    const auto pts = sample_uniform(dim, 300, 600 + static_cast<std::uint64_t>(trial));
    std::vector<double> w(pts.size());
    for (double& x : w) x = 3.0 * uniform01(601, ctr++);
    const HistogramMeasure h = histogram(pts, w, 7);
    CHECK(std::abs(pairwise_sum(h.masses) - 1.0) <= 1e-12);
    for (double m : h.masses) CHECK(m >= 0.0);
  }
}

TEST_CASE("histogram rejects all-zero weights") {
  const std::vector<Point> pts = {make_point1(0.5)};
  const std::vector<double> w = {0.0};
  CHECK_THROWS_AS(histogram(pts, w, 4), std::invalid_argument);
}
