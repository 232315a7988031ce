#pragma once

#include <cstdint>
#include <vector>

#include "preslab/kernels.hpp"
#include "preslab/systems.hpp"

namespace preslab {

struct PressureParams {
  std::vector<int> n_range;    // ascending orbit lengths, at least 3
  std::int64_t samples = 0;    // N
  std::uint64_t seed = 0;
};

// Weight degeneracy warning threshold, shared across estimators.
inline constexpr double kEssWarningFraction = 0.01;

struct PressureEstimate {
  std::vector<int> ns;
  std::vector<double> log_zn;   // log Z_n
  std::vector<double> p_n;      // log Z_n / n
  std::vector<double> ess;      // effective sample size per n
  std::vector<int> fit_window;  // ns used for the slope
  double slope = 0.0;           // headline pressure value
  double intercept = 0.0;
  double p_at_n_max = 0.0;
  double convergence_gap = 0.0;  // |slope - p_at_n_max|
  bool ess_warning = false;      // some ESS below kEssWarningFraction * N
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of log integral e^{S_n} ||/\(D f^n)|| dx over the
// normalized volume, max-shifted so nothing overflows.
double log_partition(const SmoothSystem& system, const Potential& potential, int n,
                     std::int64_t samples, std::uint64_t seed);

// Volume-growth pressure estimator: per-n values plus a regression slope of
// log Z_n against n over the upper half of the range, which cancels the O(1)
// intercept that P_n carries as O(1/n) bias.
PressureEstimate estimate_pressure(const SmoothSystem& system, const Potential& potential,
                                   const PressureParams& params);

// Same, reusing a precomputed sample pass (observable moments ignored).
PressureEstimate estimate_pressure_from_stats(const SampleStats& stats, std::uint64_t seed);

struct QFunctionalResult {
  double value = 0.0;  // P(gamma + omega) - P(gamma)
  PressureEstimate tilted;
  PressureEstimate base;
};

// Pressure difference with common random numbers on both runs.
QFunctionalResult q_functional(const SmoothSystem& system, const Potential& gamma,
                               const Potential& omega, const PressureParams& params);

}  // namespace preslab
