#include "preslab/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "preslab/reduce.hpp"

namespace preslab {

bool ConstraintSet::contains(std::span<const double> alpha) const {
  for (std::size_t c = 0; c < obs.size(); ++c)
    if (alpha[c] < lo[c] || alpha[c] > hi[c]) return false;
  return true;
}

namespace {

void validate_constraint(const ConstraintSet& cs) {
  if (cs.obs.empty() || cs.obs.size() != cs.lo.size() || cs.obs.size() != cs.hi.size())
    throw std::invalid_argument("constraint set: obs/lo/hi sizes disagree");
  for (int k : cs.obs)
    if (k < 1) throw std::invalid_argument("constraint set: basis indices are 1-based");
}

}  // namespace

LdpEstimate estimate_nu_n_from_stats(const SampleStats& stats, const ConstraintSet& cs,
                                     std::uint64_t seed, std::int64_t min_count) {
  validate_constraint(cs);
  if (stats.observables != cs.dim())
    throw std::invalid_argument("estimate_nu_n: stats carry wrong observable count");

  LdpEstimate est;
  est.ns = stats.ns;
  est.samples = stats.samples;
  est.seed = seed;
  est.min_count = min_count;

  const int rows = static_cast<int>(stats.ns.size());
  const int d = cs.dim();
  std::vector<double> xs, ys;
  for (int r = 0; r < rows; ++r) {
    const auto row = stats.row(r);
    const double shift = max_value(row);
    const std::int64_t n_samples = stats.samples;
    // same tree for numerator and denominator: masked terms are zeroed leaves
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
      bool ok = true;
      for (int c = 0; c < d && ok; ++c) {
        const double m = stats.moment(r, i, c);
        ok = m >= cs.lo[static_cast<std::size_t>(c)] && m <= cs.hi[static_cast<std::size_t>(c)];
      }
      count += ok ? 1 : 0;
    }
    const double denom = pairwise_sum_by(0, n_samples, [&](std::int64_t i) {
      return std::exp(row[static_cast<std::size_t>(i)] - shift);
    });
    const double numer = pairwise_sum_by(0, n_samples, [&](std::int64_t i) {
      bool ok = true;
      for (int c = 0; c < d && ok; ++c) {
        const double m = stats.moment(r, i, c);
        ok = m >= cs.lo[static_cast<std::size_t>(c)] && m <= cs.hi[static_cast<std::size_t>(c)];
      }
      return ok ? std::exp(row[static_cast<std::size_t>(i)] - shift) : 0.0;
    });
    const double nu = numer / denom;
    est.nu.push_back(nu);
    est.count.push_back(count);
    const int n = stats.ns[static_cast<std::size_t>(r)];
    est.log_nu_over_n.push_back(nu > 0.0 ? std::log(nu) / static_cast<double>(n)
                                         : -std::numeric_limits<double>::infinity());
    const bool eligible = nu > 0.0 && count >= min_count;
    est.in_fit.push_back(eligible ? 1 : 0);
    if (eligible) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(nu));
    }
  }
  if (xs.size() >= 2) {
    const LineFit fit = fit_line(xs, ys);
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.slope_defined = true;
  }
  return est;
}

LdpEstimate estimate_nu_n(const SmoothSystem& system, const Potential& gamma,
                          const ConstraintSet& cs, std::span<const int> n_range,
                          std::int64_t samples, std::uint64_t seed, std::int64_t min_count) {
  validate_constraint(cs);
  TestFunctionBasis basis(system.dim, *std::max_element(cs.obs.begin(), cs.obs.end()));
  const SampleStats stats =
      compute_sample_stats(system, gamma, n_range, samples, seed, &basis, cs.obs);
  return estimate_nu_n_from_stats(stats, cs, seed, min_count);
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("make_grid: bad bounds or step");
  std::vector<double> g;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  g.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) {
    double v = lo + static_cast<double>(i) * step;
    if (std::abs(v) < step * 1e-12) v = 0.0;  // snap so the zero tilt is exact
    g.push_back(v);
  }
  return g;
}

std::size_t RateFunctionTable::alpha_nodes() const {
  std::size_t total = 1;
  for (const auto& axis : alpha_axes) total *= axis.size();
  return total;
}

std::vector<double> RateFunctionTable::alpha_at(std::size_t flat) const {
  std::vector<double> alpha(alpha_axes.size());
  for (std::size_t c = alpha_axes.size(); c-- > 0;) {
    alpha[c] = alpha_axes[c][flat % alpha_axes[c].size()];
    flat /= alpha_axes[c].size();
  }
  return alpha;
}

namespace {

// Flat enumeration over the beta product grid, last coordinate fastest.
std::vector<double> beta_at(const std::vector<double>& axis, int d, std::size_t flat) {
  std::vector<double> beta(static_cast<std::size_t>(d));
  for (int c = d; c-- > 0;) {
    beta[static_cast<std::size_t>(c)] = axis[flat % axis.size()];
    flat /= axis.size();
  }
  return beta;
}

}  // namespace

RateFunctionTable rate_function(const SmoothSystem& system, const Potential& gamma,
                                std::span<const int> obs,
                                const std::vector<std::vector<double>>& alpha_axes,
                                const std::vector<double>& beta_axis,
                                const PressureParams& params) {
  if (params.n_range.size() < 3)
    throw std::invalid_argument("rate_function: n_range needs at least 3 values");
  TestFunctionBasis basis(system.dim, *std::max_element(obs.begin(), obs.end()));
  const SampleStats stats =
      compute_sample_stats(system, gamma, params.n_range, params.samples, params.seed, &basis, obs);
  return rate_function_from_stats(stats, obs, alpha_axes, beta_axis, params.seed);
}

RateFunctionTable rate_function_from_stats(const SampleStats& stats, std::span<const int> obs,
                                           const std::vector<std::vector<double>>& alpha_axes,
                                           const std::vector<double>& beta_axis,
                                           std::uint64_t seed) {
  const int d = static_cast<int>(obs.size());
  if (d < 1 || d > 2) throw std::invalid_argument("rate_function: 1 or 2 observables supported");
  if (stats.observables != d)
    throw std::invalid_argument("rate_function: stats carry wrong observable count");
  if (alpha_axes.size() != obs.size())
    throw std::invalid_argument("rate_function: one alpha axis per observable required");
  if (beta_axis.size() < 2 ||
      std::abs(beta_axis.front() + beta_axis.back()) > 1e-12)
    throw std::invalid_argument("rate_function: beta grid must span a symmetric box");
  std::size_t zero_index = beta_axis.size();
  for (std::size_t i = 0; i < beta_axis.size(); ++i)
    if (beta_axis[i] == 0.0) zero_index = i;
  if (zero_index == beta_axis.size())
    throw std::invalid_argument("rate_function: beta grid must contain zero");

  const int rows = static_cast<int>(stats.ns.size());
  const int n_max = stats.ns.back();
  std::vector<int> window;
  for (int r = 0; r < rows; ++r)
    if (2 * stats.ns[static_cast<std::size_t>(r)] >= n_max) window.push_back(r);
  if (window.size() < 2) throw std::invalid_argument("rate_function: fit window too small");

  std::size_t beta_nodes = 1;
  for (int c = 0; c < d; ++c) beta_nodes *= beta_axis.size();

  RateFunctionTable table;
  table.obs.assign(obs.begin(), obs.end());
  table.alpha_axes = alpha_axes;
  table.beta_axis = beta_axis;
  table.samples = stats.samples;
  table.seed = seed;
  table.q_values.resize(beta_nodes);
  table.ess_at_n_max.resize(beta_nodes);

  const double log_n_samples = std::log(static_cast<double>(stats.samples));
  std::vector<double> pressure_at_beta(beta_nodes);

  // each beta node is an independent pressure estimate on the shared samples
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(beta_nodes); ++bi) {
    const std::vector<double> beta = beta_at(beta_axis, d, static_cast<std::size_t>(bi));
    std::vector<double> tilted(static_cast<std::size_t>(stats.samples));
    std::vector<double> xs, ys;
    double ess_last = 0.0;
    for (int w : window) {
      const auto row = stats.row(w);
      const double n = static_cast<double>(stats.ns[static_cast<std::size_t>(w)]);
      for (std::int64_t i = 0; i < stats.samples; ++i) {
        double dot = 0.0;
        for (int c = 0; c < d; ++c)
          dot += beta[static_cast<std::size_t>(c)] * stats.moment(w, i, c);
        tilted[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)] + n * dot;
      }
      xs.push_back(n);
      ys.push_back(log_sum_exp(tilted) - log_n_samples);
      ess_last = ess_from_log_weights(tilted);
    }
    pressure_at_beta[static_cast<std::size_t>(bi)] = fit_line(xs, ys).slope;
    table.ess_at_n_max[static_cast<std::size_t>(bi)] = ess_last;
  }

  std::size_t zero_flat = 0;
  for (int c = 0; c < d; ++c) zero_flat = zero_flat * beta_axis.size() + zero_index;
  const double p_base = pressure_at_beta[zero_flat];
  for (std::size_t bi = 0; bi < beta_nodes; ++bi)
    table.q_values[bi] = pressure_at_beta[bi] - p_base;

  const std::size_t a_nodes = table.alpha_nodes();
  table.values.resize(a_nodes);
  table.beta_argmax.resize(a_nodes * static_cast<std::size_t>(d));
  table.capped.resize(a_nodes);
  for (std::size_t ai = 0; ai < a_nodes; ++ai) {
    const std::vector<double> alpha = table.alpha_at(ai);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_bi = 0;
    for (std::size_t bi = 0; bi < beta_nodes; ++bi) {
      const std::vector<double> beta = beta_at(beta_axis, d, bi);
      double v = -table.q_values[bi];
      for (int c = 0; c < d; ++c) v += beta[static_cast<std::size_t>(c)] * alpha[static_cast<std::size_t>(c)];
      if (v > best) {
        best = v;
        best_bi = bi;
      }
    }
    table.values[ai] = best;
    const std::vector<double> beta = beta_at(beta_axis, d, best_bi);
    bool capped = false;
    for (int c = 0; c < d; ++c) {
      table.beta_argmax[ai * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] =
          beta[static_cast<std::size_t>(c)];
      capped = capped || beta[static_cast<std::size_t>(c)] == beta_axis.front() ||
               beta[static_cast<std::size_t>(c)] == beta_axis.back();
    }
    table.capped[ai] = capped ? 1 : 0;
  }

  std::size_t arg_min = 0;
  for (std::size_t ai = 1; ai < a_nodes; ++ai)
    if (table.values[ai] < table.values[arg_min]) arg_min = ai;
  table.min_value = table.values[arg_min];
  table.alpha_at_min = table.alpha_at(arg_min);
  return table;
}

ContractionReport contraction_report(const LdpEstimate& ldp, const RateFunctionTable& table,
                                     const ConstraintSet& cs) {
  if (table.obs != cs.obs)
    throw std::invalid_argument("contraction_report: table and constraint observables differ");
  ContractionReport report;
  bool found = false;
  for (std::size_t ai = 0; ai < table.alpha_nodes(); ++ai) {
    const std::vector<double> alpha = table.alpha_at(ai);
    if (!cs.contains(alpha)) continue;
    if (!found || table.values[ai] < report.j_region) {
      report.j_region = table.values[ai];
      report.alpha_at_region_min = alpha;
    }
    found = true;
  }
  if (!found) throw std::invalid_argument("contraction_report: region misses the alpha grid");

  report.decay_defined = ldp.slope_defined;
  if (!ldp.slope_defined) {
    report.too_fast_to_measure = true;
    report.note = "decay too fast to measure: fewer than two usable nu_n values";
    return report;
  }
  report.decay_rate = -ldp.slope;
  report.abs_gap = std::abs(report.decay_rate - report.j_region);
  report.rel_gap = report.abs_gap / std::max(std::abs(report.j_region), 1e-300);
  return report;
}

}  // namespace preslab
