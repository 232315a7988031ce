#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "preslab/manifold.hpp"
#include "preslab/systems.hpp"

namespace preslab {

// Per-sample statistics of the weighted volume integrand, checkpointed at a
// set of orbit lengths. For sample i at checkpoint n:
//   log_weights[r*N + i] = S_n(x_i) + log||/\(D_{x_i} f^n)||
//   moments[(r*N + i)*d + c] = (1/n) sum_{j<n} g_{obs_c}(f^j x_i)
// Sample points are the uniform stream of (seed, index), regenerated on the
// fly rather than stored.
struct SampleStats {
  std::vector<int> ns;
  std::int64_t samples = 0;
  int observables = 0;
  std::vector<double> log_weights;
  std::vector<double> moments;

  std::span<const double> row(int r) const {
    return std::span<const double>(log_weights)
        .subspan(static_cast<std::size_t>(r) * static_cast<std::size_t>(samples),
                 static_cast<std::size_t>(samples));
  }
  double moment(int r, std::int64_t i, int c) const {
    return moments[(static_cast<std::size_t>(r) * static_cast<std::size_t>(samples) +
                    static_cast<std::size_t>(i)) *
                       static_cast<std::size_t>(observables) +
                   static_cast<std::size_t>(c)];
  }
};

// OpenMP kernel: samples are independent, every slot is written by exactly one
// iteration, so the result is bit-identical for any worker count.
SampleStats compute_sample_stats(const SmoothSystem& system, const Potential& potential,
                                 std::span<const int> checkpoints, std::int64_t samples,
                                 std::uint64_t seed, const TestFunctionBasis* basis = nullptr,
                                 std::span<const int> obs = {});

// Serial reference implementation; must match the kernel above bit for bit.
SampleStats compute_sample_stats_serial(const SmoothSystem& system, const Potential& potential,
                                        std::span<const int> checkpoints, std::int64_t samples,
                                        std::uint64_t seed,
                                        const TestFunctionBasis* basis = nullptr,
                                        std::span<const int> obs = {});

}  // namespace preslab
