#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace preslab {

// Fixed-shape pairwise reduction. The tree depends only on the index range,
// never on thread count, so results are bit-identical across runs.
template <class Term>
double pairwise_sum_by(std::int64_t lo, std::int64_t hi, const Term& term) {
  const std::int64_t n = hi - lo;
  if (n <= 32) {
    double s = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::int64_t mid = lo + n / 2;
  return pairwise_sum_by(lo, mid, term) + pairwise_sum_by(mid, hi, term);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum_by(0, static_cast<std::int64_t>(v.size()),
                         [&](std::int64_t i) { return v[i]; });
}

inline double max_value(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = x > m ? x : m;
  return m;
}

// log(sum_i exp(v_i)) with max shift; empty input gives -inf.
inline double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double shift = max_value(v);
  if (!std::isfinite(shift)) return shift;
  const double s = pairwise_sum_by(0, static_cast<std::int64_t>(v.size()),
                                   [&](std::int64_t i) { return std::exp(v[i] - shift); });
  return shift + std::log(s);
}

// Effective sample size of weights given in log domain: (sum w)^2 / sum w^2.
inline double ess_from_log_weights(std::span<const double> lw) {
  if (lw.empty()) return 0.0;
  const double shift = max_value(lw);
  if (!std::isfinite(shift)) return 0.0;
  const auto n = static_cast<std::int64_t>(lw.size());
  const double s1 = pairwise_sum_by(0, n, [&](std::int64_t i) { return std::exp(lw[i] - shift); });
  const double s2 = pairwise_sum_by(0, n, [&](std::int64_t i) {
    const double t = std::exp(lw[i] - shift);
    return t * t;
  });
  return s1 * s1 / s2;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares through centered coordinates.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<std::int64_t>(x.size());
  const double xm = pairwise_sum(x) / static_cast<double>(n);
  const double ym = pairwise_sum(y) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double dx = x[i] - xm;
    sxx += dx * dx;
    sxy += dx * (y[i] - ym);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  return fit;
}

}  // namespace preslab
