#include "preslab/empirical.hpp"

#include <stdexcept>

namespace preslab {

std::vector<Point> orbit(const SmoothSystem& system, const Point& x, int n) {
  if (n < 1) throw std::invalid_argument("orbit: n must be >= 1");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  Point p = x;
  for (int i = 0; i < n; ++i) {
    pts.push_back(p);
    p = system.map(p);
  }
  return pts;
}

EmpiricalMeasure empirical_measure(const SmoothSystem& system, const Point& x, int n) {
  EmpiricalMeasure em;
  em.base = x;
  em.length = n;
  em.points = orbit(system, x, n);
  return em;
}

double birkhoff_sum(const SmoothSystem& system, const Potential& potential, const Point& x,
                    int n) {
  if (n < 1) throw std::invalid_argument("birkhoff_sum: n must be >= 1");
  double s = 0.0;
  Point p = x;
  for (int i = 0; i < n; ++i) {
    s += potential.eval(p);
    p = system.map(p);
  }
  return s;
}

std::vector<double> moments(const EmpiricalMeasure& em, const TestFunctionBasis& basis, int K) {
  std::vector<double> out(static_cast<std::size_t>(K), 0.0);
  for (int k = 1; k <= K; ++k) {
    double s = 0.0;
    for (const Point& p : em.points) s += basis.eval(k, p);
    out[static_cast<std::size_t>(k - 1)] = s / static_cast<double>(em.length);
  }
  return out;
}

}  // namespace preslab
