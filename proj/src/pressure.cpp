#include "preslab/pressure.hpp"

#include <cmath>
#include <stdexcept>

#include "preslab/reduce.hpp"

namespace preslab {

double log_partition(const SmoothSystem& system, const Potential& potential, int n,
                     std::int64_t samples, std::uint64_t seed) {
  const int checkpoints[1] = {n};
  const SampleStats stats = compute_sample_stats(system, potential, checkpoints, samples, seed);
  return log_sum_exp(stats.row(0)) - std::log(static_cast<double>(samples));
}

PressureEstimate estimate_pressure_from_stats(const SampleStats& stats, std::uint64_t seed) {
  PressureEstimate est;
  est.ns = stats.ns;
  est.samples = stats.samples;
  est.seed = seed;
  const double log_n = std::log(static_cast<double>(stats.samples));

  const int rows = static_cast<int>(stats.ns.size());
  est.log_zn.resize(static_cast<std::size_t>(rows));
  est.p_n.resize(static_cast<std::size_t>(rows));
  est.ess.resize(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    const auto row = stats.row(r);
    est.log_zn[static_cast<std::size_t>(r)] = log_sum_exp(row) - log_n;
    est.p_n[static_cast<std::size_t>(r)] =
        est.log_zn[static_cast<std::size_t>(r)] / static_cast<double>(stats.ns[static_cast<std::size_t>(r)]);
    est.ess[static_cast<std::size_t>(r)] = ess_from_log_weights(row);
  }

  // slope window: n with 2n >= n_max (burn-in discarded)
  const int n_max = stats.ns.back();
  std::vector<double> xs, ys;
  for (int r = 0; r < rows; ++r) {
    if (2 * stats.ns[static_cast<std::size_t>(r)] >= n_max) {
      est.fit_window.push_back(stats.ns[static_cast<std::size_t>(r)]);
      xs.push_back(static_cast<double>(stats.ns[static_cast<std::size_t>(r)]));
      ys.push_back(est.log_zn[static_cast<std::size_t>(r)]);
      if (est.ess[static_cast<std::size_t>(r)] <
          kEssWarningFraction * static_cast<double>(stats.samples))
        est.ess_warning = true;
    }
  }
  if (xs.size() < 2) throw std::invalid_argument("estimate_pressure: fit window too small");
  const LineFit fit = fit_line(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.p_at_n_max = est.p_n.back();
  est.convergence_gap = std::abs(est.slope - est.p_at_n_max);
  return est;
}

PressureEstimate estimate_pressure(const SmoothSystem& system, const Potential& potential,
                                   const PressureParams& params) {
  if (params.n_range.size() < 3)
    throw std::invalid_argument("estimate_pressure: n_range needs at least 3 values");
  const SampleStats stats =
      compute_sample_stats(system, potential, params.n_range, params.samples, params.seed);
  return estimate_pressure_from_stats(stats, params.seed);
}

QFunctionalResult q_functional(const SmoothSystem& system, const Potential& gamma,
                               const Potential& omega, const PressureParams& params) {
  QFunctionalResult result;
  result.base = estimate_pressure(system, gamma, params);
  result.tilted = estimate_pressure(system, add_potentials(gamma, omega), params);
  result.value = result.tilted.slope - result.base.slope;
  return result;
}

}  // namespace preslab
