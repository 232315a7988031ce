#include "preslab/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

#include "preslab/cocycle.hpp"
#include "preslab/pressure.hpp"
#include "preslab/reduce.hpp"
#include "preslab/rng.hpp"

namespace preslab {

WeightedEnsemble build_ensemble(const SmoothSystem& system, const Potential& potential, int n,
                                std::int64_t samples, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("build_ensemble: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("build_ensemble: samples must be >= 1");

  WeightedEnsemble ens;
  ens.dim = system.dim;
  ens.n = n;
  ens.samples = samples;
  ens.seed = seed;
  ens.orbits.resize(static_cast<std::size_t>(samples) * static_cast<std::size_t>(n + 1));
  ens.log_weights.resize(static_cast<std::size_t>(samples));

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < samples; ++i) {
    Point p;
    p.dim = system.dim;
    for (int c = 0; c < system.dim; ++c)
      p.x[c] = uniform01(seed, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(system.dim) +
                                   static_cast<std::uint64_t>(c));
    CocycleAccumulator acc(system.dim);
    double birkhoff = 0.0;
    Point* row = &ens.orbits[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1)];
    for (int j = 0; j < n; ++j) {
      row[j] = p;
      birkhoff += potential.eval(p);
      acc.push(system.jacobian(p));
      p = system.map(p);
    }
    row[n] = p;
    ens.log_weights[static_cast<std::size_t>(i)] = birkhoff + acc.log_wedge_norm();
  }

  // normalize in fixed order
  const double shift = max_value(ens.log_weights);
  std::vector<double> terms(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i)
    terms[static_cast<std::size_t>(i)] = std::exp(ens.log_weights[static_cast<std::size_t>(i)] - shift);
  const double denom = pairwise_sum(terms);
  ens.weights.resize(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i)
    ens.weights[static_cast<std::size_t>(i)] = terms[static_cast<std::size_t>(i)] / denom;
  ens.ess = ess_from_log_weights(ens.log_weights);
  ens.ess_warning = ens.ess < kEssWarningFraction * static_cast<double>(samples);
  return ens;
}

namespace {

// Weighted average over samples of the orbit-window mean of g_k; the window
// [first, first + n) selects plain (first = 0) or composed (first = 1) moments.
std::vector<double> windowed_moments(const WeightedEnsemble& ens, const TestFunctionBasis& basis,
                                     int K, int first) {
  std::vector<double> per_sample(static_cast<std::size_t>(ens.samples));
  std::vector<double> out(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < ens.samples; ++i) {
      double s = 0.0;
      for (int j = 0; j < ens.n; ++j) s += basis.eval(k, ens.orbit_point(i, first + j));
      per_sample[static_cast<std::size_t>(i)] =
          ens.weights[static_cast<std::size_t>(i)] * (s / static_cast<double>(ens.n));
    }
    out[static_cast<std::size_t>(k - 1)] = pairwise_sum(per_sample);
  }
  return out;
}

}  // namespace

std::vector<double> ensemble_moments(const WeightedEnsemble& ens, const TestFunctionBasis& basis,
                                     int K) {
  return windowed_moments(ens, basis, K, 0);
}

double invariance_defect(const WeightedEnsemble& ens, const TestFunctionBasis& basis, int K) {
  const std::vector<double> plain = windowed_moments(ens, basis, K, 0);
  const std::vector<double> composed = windowed_moments(ens, basis, K, 1);
  double worst = 0.0;
  for (int k = 0; k < K; ++k)
    worst = std::max(worst, std::abs(composed[static_cast<std::size_t>(k)] -
                                     plain[static_cast<std::size_t>(k)]));
  return worst;
}

HistogramMeasure equilibrium_histogram(const WeightedEnsemble& ens, int bins_per_axis) {
  std::vector<Point> pts;
  std::vector<double> ws;
  pts.reserve(static_cast<std::size_t>(ens.samples) * static_cast<std::size_t>(ens.n));
  ws.reserve(pts.capacity());
  for (std::int64_t i = 0; i < ens.samples; ++i) {
    const double w = ens.weights[static_cast<std::size_t>(i)] / static_cast<double>(ens.n);
    for (int j = 0; j < ens.n; ++j) {
      pts.push_back(ens.orbit_point(i, j));
      ws.push_back(w);
    }
  }
  return histogram(pts, ws, bins_per_axis);
}

double concentration_mass(const WeightedEnsemble& ens, const TestFunctionBasis& basis,
                          std::span<const double> reference, double radius) {
  const int K = static_cast<int>(reference.size());
  std::vector<double> contrib(static_cast<std::size_t>(ens.samples));
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < ens.samples; ++i) {
    double dist = 0.0;
    double scale = 1.0;
    for (int k = 1; k <= K; ++k) {
      double s = 0.0;
      for (int j = 0; j < ens.n; ++j) s += basis.eval(k, ens.orbit_point(i, j));
      scale *= 0.5;
      dist += scale * std::abs(s / static_cast<double>(ens.n) - reference[static_cast<std::size_t>(k - 1)]);
    }
    contrib[static_cast<std::size_t>(i)] =
        dist <= radius ? ens.weights[static_cast<std::size_t>(i)] : 0.0;
  }
  return pairwise_sum(contrib);
}

}  // namespace preslab
