#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "preslab/manifold.hpp"
#include "preslab/systems.hpp"

namespace preslab {

// Monte Carlo discretization of the weighted empirical measure: N sampled
// orbits with log-weights S_n(x_i) + log||/\(D f^n)||. Orbits keep one extra
// point so composed observables g o f need no rerun.
struct WeightedEnsemble {
  int dim = 1;
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<Point> orbits;        // samples * (n + 1), row-major
  std::vector<double> log_weights;  // per sample
  std::vector<double> weights;      // normalized, sums to 1
  double ess = 0.0;
  bool ess_warning = false;

  const Point& orbit_point(std::int64_t i, int j) const {
    return orbits[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1) +
                  static_cast<std::size_t>(j)];
  }
};

WeightedEnsemble build_ensemble(const SmoothSystem& system, const Potential& potential, int n,
                                std::int64_t samples, std::uint64_t seed);

// Entry k = sum_i w_i (1/n) sum_{j<n} g_k(f^j x_i).
std::vector<double> ensemble_moments(const WeightedEnsemble& ens, const TestFunctionBasis& basis,
                                     int K);

// max_k |mu_n(g_k o f) - mu_n(g_k)|, a finite-n invariance diagnostic.
double invariance_defect(const WeightedEnsemble& ens, const TestFunctionBasis& basis, int K);

HistogramMeasure equilibrium_histogram(const WeightedEnsemble& ens, int bins_per_axis);

// Normalized weight mass carried by samples whose moment vector is within
// weak distance `radius` of `reference`.
double concentration_mass(const WeightedEnsemble& ens, const TestFunctionBasis& basis,
                          std::span<const double> reference, double radius);

}  // namespace preslab
