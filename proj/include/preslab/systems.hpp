#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "preslab/manifold.hpp"

namespace preslab {

// Derivative of the map at a point; row-major, only the top-left dim x dim
// block is meaningful.
struct Jacobian {
  int dim = 1;
  std::array<double, 4> m{0.0, 0.0, 0.0, 0.0};

  double det() const { return dim == 1 ? m[0] : m[0] * m[3] - m[1] * m[2]; }
};

struct SmoothSystem {
  std::string name;
  int dim = 1;
  std::function<Point(const Point&)> map;
  std::function<Jacobian(const Point&)> jacobian;
  // range of |det Df| over the manifold (exact for the registered families)
  double abs_det_min = 1.0;
  double abs_det_max = 1.0;
  std::optional<double> known_entropy;

  struct CircleParams {
    int degree = 2;
    double eps = 0.0;
  };
  std::optional<CircleParams> circle;  // set for uniformly expanding circle maps
};

// f(x) = k x + eps sin(2 pi x) mod 1, uniformly expanding when k - 2 pi |eps| > 1.
SmoothSystem make_expanding_circle(int k, double eps);

// x -> M x mod 1 for an integer matrix with det != 0.
SmoothSystem make_torus_endomorphism(const std::array<std::array<int, 2>, 2>& m);

struct Potential {
  std::string name;
  std::function<double(const Point&)> eval;
  double sup_bound = 0.0;
};

struct ConstantPotentialSpec {
  double value = 0.0;
};

// Coefficients against the test-function basis of the system's dimension.
struct TrigPotentialSpec {
  std::vector<std::pair<int, double>> coeffs;  // (1-based basis index, coefficient)
};

// gamma(x) = -t log |det Df(x)|.
struct GeometricPotentialSpec {
  double t = 1.0;
};

using PotentialSpec =
    std::variant<ConstantPotentialSpec, TrigPotentialSpec, GeometricPotentialSpec>;

Potential make_potential(const PotentialSpec& spec, const SmoothSystem& system);

Potential add_potentials(const Potential& a, const Potential& b);

// base + sum_c beta_c * g_{obs_c}
Potential tilt_potential(const Potential& base, std::span<const double> beta,
                         const TestFunctionBasis& basis, std::span<const int> obs);

// Max deviation between the analytic Jacobian and a central finite difference
// over random sample points.
double jacobian_selfcheck(const SmoothSystem& system, std::int64_t samples, std::uint64_t seed);

}  // namespace preslab
