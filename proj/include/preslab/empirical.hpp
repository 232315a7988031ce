#pragma once

#include <vector>

#include "preslab/manifold.hpp"
#include "preslab/systems.hpp"

namespace preslab {

// Uniform measure on the first n orbit points of a base point.
struct EmpiricalMeasure {
  Point base;
  int length = 0;
  std::vector<Point> points;  // x, f x, ..., f^{n-1} x
};

std::vector<Point> orbit(const SmoothSystem& system, const Point& x, int n);

EmpiricalMeasure empirical_measure(const SmoothSystem& system, const Point& x, int n);

// S_n = sum_{i<n} gamma(f^i x)
double birkhoff_sum(const SmoothSystem& system, const Potential& potential, const Point& x, int n);

// Entry k = (1/n) sum_i g_k(f^i x) for k = 1..K.
std::vector<double> moments(const EmpiricalMeasure& em, const TestFunctionBasis& basis, int K);

}  // namespace preslab
