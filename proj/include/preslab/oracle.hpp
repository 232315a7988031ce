#pragma once

#include <cmath>
#include <vector>

#include "preslab/manifold.hpp"
#include "preslab/systems.hpp"

namespace preslab {

// Collocated transfer operator (L h)(x) = sum_{f(y)=x} e^{gamma(y)} h(y) on a
// uniform grid, preimages resolved per branch and h interpolated with a
// 4-point Lagrange stencil. Leading eigendata from power iteration.
struct TransferOperatorModel {
  int degree = 2;
  double eps = 0.0;
  int grid_size = 0;
  std::vector<double> matrix;     // grid_size x grid_size, row-major
  double eigenvalue = 0.0;        // lambda > 0
  std::vector<double> right_vec;  // h, scaled so sum rho_i h_i = 1
  std::vector<double> left_vec;   // rho, scaled so sum rho_i = 1
  int iterations = 0;
  double residual = 0.0;  // sup |L h - lambda h| after convergence
};

TransferOperatorModel build_operator(const SmoothSystem& system, const Potential& potential,
                                     int grid_size);

inline double oracle_pressure(const TransferOperatorModel& model) {
  return std::log(model.eigenvalue);
}

// Moments of the invariant Gibbs measure (density h against the left
// eigenvector measure) by grid quadrature.
std::vector<double> oracle_gibbs_moments(const TransferOperatorModel& model,
                                         const TestFunctionBasis& basis, int K);

// Mean of an arbitrary function under the Gibbs measure.
double gibbs_mean(const TransferOperatorModel& model, const Potential& fn);

// h(mu) = P(gamma) - integral of gamma, evaluated at equilibrium.
inline double oracle_entropy(const TransferOperatorModel& model, double gamma_mean) {
  return oracle_pressure(model) - gamma_mean;
}

}  // namespace preslab
