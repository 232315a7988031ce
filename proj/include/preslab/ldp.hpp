#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "preslab/pressure.hpp"
#include "preslab/systems.hpp"

namespace preslab {

// Moment constraint: observable basis indices paired with closed intervals
// (use +-infinity for unbounded sides; lo > hi encodes the empty set).
struct ConstraintSet {
  std::vector<int> obs;
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(obs.size()); }
  bool contains(std::span<const double> alpha) const;
};

struct LdpEstimate {
  std::vector<int> ns;
  std::vector<double> nu;              // constrained weight mass per n, in [0,1]
  std::vector<double> log_nu_over_n;   // (1/n) log nu_n, -inf when nu_n = 0
  std::vector<std::int64_t> count;     // satisfying samples per n
  std::vector<std::uint8_t> in_fit;    // 1 when the n entered the regression
  double slope = 0.0;
  double intercept = 0.0;
  bool slope_defined = false;
  std::int64_t min_count = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::int64_t kDefaultMinSatisfyingCount = 30;

// Decay of the constrained ensemble mass. The numerator and denominator share
// the max shift and the same reduction tree, so nested constraints give
// pointwise-monotone nu_n exactly.
LdpEstimate estimate_nu_n(const SmoothSystem& system, const Potential& gamma,
                          const ConstraintSet& cs, std::span<const int> n_range,
                          std::int64_t samples, std::uint64_t seed,
                          std::int64_t min_count = kDefaultMinSatisfyingCount);

LdpEstimate estimate_nu_n_from_stats(const SampleStats& stats, const ConstraintSet& cs,
                                     std::uint64_t seed,
                                     std::int64_t min_count = kDefaultMinSatisfyingCount);

// Legendre table J(alpha) = max over the beta grid of beta.alpha - Q(beta.g),
// with Q estimated from common-random-number pressure runs.
struct RateFunctionTable {
  std::vector<int> obs;
  std::vector<std::vector<double>> alpha_axes;  // one grid per observable
  std::vector<double> beta_axis;                // symmetric grid applied per coordinate
  std::vector<double> values;                   // row-major over the alpha product grid
  std::vector<double> beta_argmax;              // d entries per alpha node
  std::vector<std::uint8_t> capped;             // argmax hit the beta boundary
  std::vector<double> q_values;                 // Q per beta node (product grid)
  std::vector<double> ess_at_n_max;             // per beta node
  double min_value = 0.0;
  std::vector<double> alpha_at_min;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  std::size_t alpha_nodes() const;
  std::vector<double> alpha_at(std::size_t flat) const;
};

RateFunctionTable rate_function(const SmoothSystem& system, const Potential& gamma,
                                std::span<const int> obs,
                                const std::vector<std::vector<double>>& alpha_axes,
                                const std::vector<double>& beta_axis,
                                const PressureParams& params);

// Same table from an existing sample pass whose observables match `obs`.
RateFunctionTable rate_function_from_stats(const SampleStats& stats, std::span<const int> obs,
                                           const std::vector<std::vector<double>>& alpha_axes,
                                           const std::vector<double>& beta_axis,
                                           std::uint64_t seed);

std::vector<double> make_grid(double lo, double hi, double step);

// Side-by-side record of the empirical decay rate and the rate-function value
// over a constraint region.
struct ContractionReport {
  bool decay_defined = false;
  double decay_rate = 0.0;  // -slope
  double j_region = 0.0;    // min of the table over the region
  std::vector<double> alpha_at_region_min;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
  bool too_fast_to_measure = false;
  std::string note;
};

ContractionReport contraction_report(const LdpEstimate& ldp, const RateFunctionTable& table,
                                     const ConstraintSet& cs);

}  // namespace preslab
