// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "preslab/kernels.hpp"
#include "preslab/oracle.hpp"
#include "preslab/reduce.hpp"
#include "preslab/systems.hpp"

using namespace preslab;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void bench_sample_stats(const char* label, const SmoothSystem& system, const Potential& pot,
                        std::int64_t samples) {
  const std::vector<int> ns = {4, 8, 12, 16};

  auto t0 = clock_type::now();
  const SampleStats serial = compute_sample_stats_serial(system, pot, ns, samples, 42);
  const double t_serial = seconds_since(t0);

  t0 = clock_type::now();
  const SampleStats parallel = compute_sample_stats(system, pot, ns, samples, 42);
  const double t_parallel = seconds_since(t0);

  bool identical = serial.log_weights == parallel.log_weights;
  std::printf("%-24s N=%-8lld serial %8.3fs  parallel %8.3fs  speedup %5.2fx  bitwise %s\n",
              label, static_cast<long long>(samples), t_serial, t_parallel,
              t_serial / t_parallel, identical ? "equal" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  const SmoothSystem doubling = make_expanding_circle(2, 0.0);
  const SmoothSystem perturbed = make_expanding_circle(2, 0.05);
  const SmoothSystem cat = make_torus_endomorphism({{{2, 1}, {1, 1}}});

  bench_sample_stats("doubling gamma=0", doubling,
                     make_potential(ConstantPotentialSpec{0.0}, doubling), 400000);
  bench_sample_stats("perturbed trig", perturbed,
                     make_potential(TrigPotentialSpec{{{1, 0.5}}}, perturbed), 400000);
  bench_sample_stats("cat map gamma=0", cat, make_potential(ConstantPotentialSpec{0.0}, cat),
                     400000);

  // transfer operator build (rows are independent)
  const auto t0 = clock_type::now();
  const TransferOperatorModel model =
      build_operator(perturbed, make_potential(TrigPotentialSpec{{{1, 0.5}}}, perturbed), 1024);
  std::printf("%-24s M=%-8d build+eig %8.3fs  lambda %.12f\n", "transfer operator", 1024,
              seconds_since(t0), model.eigenvalue);
  return 0;
}
