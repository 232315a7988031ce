#include <doctest.h>

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "preslab/kernels.hpp"
#include "preslab/reduce.hpp"

using namespace preslab;

TEST_CASE("parallel kernel matches the serial reference bit for bit") {
  const SmoothSystem systems[] = {make_expanding_circle(2, 0.05),
                                  make_torus_endomorphism({{{2, 1}, {1, 1}}})};
  const std::vector<int> ns = {3, 5, 9};
  for (const auto& sys : systems) {
    const Potential pot = sys.dim == 1
                              ? make_potential(TrigPotentialSpec{{{1, 0.4}}}, sys)
                              : make_potential(ConstantPotentialSpec{0.2}, sys);
    const TestFunctionBasis basis(sys.dim, 3);
    const std::vector<int> obs = {1, 3};
    const SampleStats serial =
        compute_sample_stats_serial(sys, pot, ns, 5000, 99, &basis, obs);
    const SampleStats parallel = compute_sample_stats(sys, pot, ns, 5000, 99, &basis, obs);
    REQUIRE(serial.log_weights.size() == parallel.log_weights.size());
    CHECK(serial.log_weights == parallel.log_weights);
    CHECK(serial.moments == parallel.moments);
  }
}

#ifdef _OPENMP
TEST_CASE("results are identical for any worker count") {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential pot = make_potential(TrigPotentialSpec{{{2, -0.3}}}, sys);
  const std::vector<int> ns = {4, 8};
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const SampleStats one = compute_sample_stats(sys, pot, ns, 20000, 7);
  omp_set_num_threads(saved > 1 ? saved : 2);
  const SampleStats many = compute_sample_stats(sys, pot, ns, 20000, 7);
  omp_set_num_threads(saved);
  CHECK(one.log_weights == many.log_weights);
}
#endif

TEST_CASE("pairwise reduction helpers") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 7 == 0 ? -1.0 : 1.0) / (1.0 + i);
  const double s = pairwise_sum(v);
  double reference = 0.0;
  for (double x : v) reference += x;
  CHECK(s == doctest::Approx(reference).epsilon(1e-12));

  // log-sum-exp of identical entries: shift cancels exactly
  std::vector<double> same(4096, 3.25);
  CHECK(log_sum_exp(same) == doctest::Approx(3.25 + std::log(4096.0)).epsilon(1e-15));

  // ESS of uniform weights equals the count
  CHECK(ess_from_log_weights(same) == doctest::Approx(4096.0).epsilon(1e-12));
}

TEST_CASE("line fit recovers an exact affine law") {
  const std::vector<double> x = {4, 6, 8, 10, 12};
  std::vector<double> y;
  for (double xi : x) y.push_back(1.75 * xi - 0.3);
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("kernel validates its inputs") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential pot = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> bad = {5, 3};
  CHECK_THROWS_AS(compute_sample_stats(sys, pot, bad, 10, 1), std::invalid_argument);
  const std::vector<int> ok = {3, 5};
  CHECK_THROWS_AS(compute_sample_stats(sys, pot, ok, 0, 1), std::invalid_argument);
}
