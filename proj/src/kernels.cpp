#include "preslab/kernels.hpp"

#include <stdexcept>

#include "preslab/cocycle.hpp"
#include "preslab/rng.hpp"

namespace preslab {

namespace {

void validate(std::span<const int> checkpoints, std::int64_t samples,
              const TestFunctionBasis* basis, std::span<const int> obs) {
  if (checkpoints.empty()) throw std::invalid_argument("sample stats: no checkpoints");
  int prev = 0;
  for (int n : checkpoints) {
    if (n <= prev) throw std::invalid_argument("sample stats: checkpoints must be ascending, >= 1");
    prev = n;
  }
  if (samples < 1) throw std::invalid_argument("sample stats: need at least one sample");
  if (!obs.empty() && basis == nullptr)
    throw std::invalid_argument("sample stats: observables given without a basis");
}

struct Layout {
  std::int64_t samples;
  int rows;
  int obs;
};

// One sample's full orbit walk; writes its slots in every checkpoint row.
template <bool WithObs>
void walk_sample(const SmoothSystem& system, const Potential& potential,
                 std::span<const int> checkpoints, const TestFunctionBasis* basis,
                 std::span<const int> obs, std::uint64_t seed, std::int64_t i, const Layout& lay,
                 double* log_weights, double* moments) {
  Point p;
  p.dim = system.dim;
  for (int c = 0; c < system.dim; ++c)
    p.x[c] = uniform01(seed, static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(system.dim) +
                                 static_cast<std::uint64_t>(c));

  CocycleAccumulator acc(system.dim);
  double birkhoff = 0.0;
  double obs_sum[4] = {0.0, 0.0, 0.0, 0.0};
  int row = 0;
  const int n_max = checkpoints.back();
  for (int step = 0; step < n_max; ++step) {
    birkhoff += potential.eval(p);
    acc.push(system.jacobian(p));
    if constexpr (WithObs) {
      for (int c = 0; c < lay.obs; ++c) obs_sum[c] += basis->eval(obs[static_cast<std::size_t>(c)], p);
    }
    p = system.map(p);
    if (step + 1 == checkpoints[static_cast<std::size_t>(row)]) {
      const std::size_t slot = static_cast<std::size_t>(row) * static_cast<std::size_t>(lay.samples) +
                               static_cast<std::size_t>(i);
      log_weights[slot] = birkhoff + acc.log_wedge_norm();
      if constexpr (WithObs) {
        for (int c = 0; c < lay.obs; ++c)
          moments[slot * static_cast<std::size_t>(lay.obs) + static_cast<std::size_t>(c)] =
              obs_sum[c] / static_cast<double>(step + 1);
      }
      ++row;
    }
  }
}

template <bool Parallel>
SampleStats run_stats(const SmoothSystem& system, const Potential& potential,
                      std::span<const int> checkpoints, std::int64_t samples, std::uint64_t seed,
                      const TestFunctionBasis* basis, std::span<const int> obs) {
  validate(checkpoints, samples, basis, obs);
  if (obs.size() > 4) throw std::invalid_argument("sample stats: at most 4 observables");

  SampleStats stats;
  stats.ns.assign(checkpoints.begin(), checkpoints.end());
  stats.samples = samples;
  stats.observables = static_cast<int>(obs.size());
  const Layout lay{samples, static_cast<int>(checkpoints.size()), stats.observables};
  stats.log_weights.resize(static_cast<std::size_t>(lay.rows) * static_cast<std::size_t>(samples));
  stats.moments.resize(stats.log_weights.size() * static_cast<std::size_t>(lay.obs));

  double* lw = stats.log_weights.data();
  double* mm = stats.moments.data();
  if (lay.obs == 0) {
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < samples; ++i)
      walk_sample<false>(system, potential, checkpoints, basis, obs, seed, i, lay, lw, mm);
  } else {
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < samples; ++i)
      walk_sample<true>(system, potential, checkpoints, basis, obs, seed, i, lay, lw, mm);
  }
  return stats;
}

}  // namespace

SampleStats compute_sample_stats(const SmoothSystem& system, const Potential& potential,
                                 std::span<const int> checkpoints, std::int64_t samples,
                                 std::uint64_t seed, const TestFunctionBasis* basis,
                                 std::span<const int> obs) {
  return run_stats<true>(system, potential, checkpoints, samples, seed, basis, obs);
}

SampleStats compute_sample_stats_serial(const SmoothSystem& system, const Potential& potential,
                                        std::span<const int> checkpoints, std::int64_t samples,
                                        std::uint64_t seed, const TestFunctionBasis* basis,
                                        std::span<const int> obs) {
  return run_stats<false>(system, potential, checkpoints, samples, seed, basis, obs);
}

}  // namespace preslab
