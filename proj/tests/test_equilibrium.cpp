#include <doctest.h>

#include <stdexcept>

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "preslab/equilibrium.hpp"
#include "preslab/oracle.hpp"
#include "preslab/reduce.hpp"

using namespace preslab;

TEST_CASE("a single-sample ensemble is the plain empirical measure") {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 2.0}}}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, pot, 6, 1, 3);
  CHECK(ens.weights[0] == 1.0);
  const TestFunctionBasis basis(1, 4);
  const auto m = ensemble_moments(ens, basis, 4);
  // weight cancels entirely: these are the orbit moments
  double cos_avg = 0.0;
  for (int j = 0; j < 6; ++j) cos_avg += basis.eval(1, ens.orbit_point(0, j));
  CHECK(m[0] == doctest::Approx(cos_avg / 6.0).epsilon(1e-14));
}

TEST_CASE("constant weights reduce to the unweighted average bit for bit") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, zero, 8, 20000, 17);
  // every log weight equals 8 log 2
  for (std::int64_t i = 0; i < 200; ++i)
    CHECK(ens.log_weights[static_cast<std::size_t>(i)] == ens.log_weights[0]);
  const TestFunctionBasis basis(1, 8);
  const auto weighted = ensemble_moments(ens, basis, 8);
  std::vector<double> per_sample(static_cast<std::size_t>(ens.samples));
  for (int k = 1; k <= 8; ++k) {
    for (std::int64_t i = 0; i < ens.samples; ++i) {
      double s = 0.0;
      for (int j = 0; j < ens.n; ++j) s += basis.eval(k, ens.orbit_point(i, j));
      per_sample[static_cast<std::size_t>(i)] = ens.weights[static_cast<std::size_t>(i)] * (s / 8.0);
    }
    CHECK(weighted[static_cast<std::size_t>(k - 1)] == pairwise_sum(per_sample));
  }
}

TEST_CASE("cat map with zero potential also has constant weights") {
  const SmoothSystem cat = make_torus_endomorphism({{{2, 1}, {1, 1}}});
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, cat);
  const WeightedEnsemble ens = build_ensemble(cat, zero, 6, 5000, 19);
  for (double lw : ens.log_weights) CHECK(lw == ens.log_weights[0]);
  const TestFunctionBasis basis(2, 12);
  const auto weighted = ensemble_moments(ens, basis, 12);
  std::vector<double> per_sample(static_cast<std::size_t>(ens.samples));
  for (int k = 1; k <= 12; ++k) {
    for (std::int64_t i = 0; i < ens.samples; ++i) {
      double s = 0.0;
      for (int j = 0; j < ens.n; ++j) s += basis.eval(k, ens.orbit_point(i, j));
      per_sample[static_cast<std::size_t>(i)] =
          ens.weights[static_cast<std::size_t>(i)] * (s / static_cast<double>(ens.n));
    }
    CHECK(weighted[static_cast<std::size_t>(k - 1)] == pairwise_sum(per_sample));
  }
}

#ifdef _OPENMP
TEST_CASE("ensembles are identical for any worker count") {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 0.6}}}, sys);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const WeightedEnsemble one = build_ensemble(sys, pot, 7, 20000, 83);
  omp_set_num_threads(saved > 1 ? saved : 2);
  const WeightedEnsemble many = build_ensemble(sys, pot, 7, 20000, 83);
  omp_set_num_threads(saved);
  CHECK(one.log_weights == many.log_weights);
  CHECK(one.weights == many.weights);
}
#endif

TEST_CASE("normalized weights sum to one") {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 0.7}, {4, -0.4}}}, sys);
  for (int n : {3, 9}) {
    const WeightedEnsemble ens = build_ensemble(sys, pot, n, 30000, 23 + static_cast<std::uint64_t>(n));
    CHECK(std::abs(pairwise_sum(ens.weights) - 1.0) <= 1e-12);
    for (double w : ens.weights) CHECK(w >= 0.0);
  }
}

TEST_CASE("doubling with zero potential equilibrates to the volume") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, zero, 16, 100000, 29);
  const TestFunctionBasis basis(1, 8);
  for (double m : ensemble_moments(ens, basis, 8)) CHECK(std::abs(m) < 0.02);
}

TEST_CASE("tilted doubling matches the oracle Gibbs moment") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 0.5}}}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, pot, 16, 100000, 31);
  const TestFunctionBasis basis(1, 8);
  const auto m = ensemble_moments(ens, basis, 8);
  const auto oracle = oracle_gibbs_moments(build_operator(sys, pot, 512), basis, 8);
  CHECK(std::abs(m[0] - oracle[0]) < 0.05);
}

TEST_CASE("moment of the first harmonic at the fixed point is one") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  WeightedEnsemble ens = build_ensemble(sys, zero, 5, 1, 0);
  // plant the ensemble on the fixed point orbit
  for (int j = 0; j <= ens.n; ++j)
    ens.orbits[static_cast<std::size_t>(j)] = make_point1(0.0);
  const TestFunctionBasis basis(1, 2);
  CHECK(ensemble_moments(ens, basis, 2)[0] == 1.0);
}

TEST_CASE("invariance defect vanishes on a full period") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  WeightedEnsemble ens = build_ensemble(sys, zero, 6, 1, 0);
  const Point cycle[3] = {make_point1(1.0 / 7.0), make_point1(2.0 / 7.0), make_point1(4.0 / 7.0)};
  for (int j = 0; j <= 6; ++j) ens.orbits[static_cast<std::size_t>(j)] = cycle[j % 3];
  const TestFunctionBasis basis(1, 8);
  CHECK(invariance_defect(ens, basis, 8) < 1e-10);
}

TEST_CASE("invariance defect shrinks with n on the doubling benchmark") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const TestFunctionBasis basis(1, 8);
  const double d4 = invariance_defect(build_ensemble(sys, zero, 4, 100000, 37), basis, 8);
  const double d16 = invariance_defect(build_ensemble(sys, zero, 16, 100000, 37), basis, 8);
  CHECK(d16 < d4);
  CHECK(d16 < 0.05);
}

TEST_CASE("equilibrium histogram of the doubling volume is flat") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, zero, 8, 100000, 41);
  const HistogramMeasure h = equilibrium_histogram(ens, 16);
  for (double m : h.masses) CHECK(std::abs(m - 1.0 / 16.0) < 0.02);
}

TEST_CASE("single fixed-point ensemble concentrates its histogram") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, zero, 5, 1, 0);
  bool planted_at_zero = true;
  for (int j = 0; j < ens.n; ++j) planted_at_zero = planted_at_zero && ens.orbit_point(0, j).x[0] < 1e-9;
  const HistogramMeasure h = equilibrium_histogram(ens, 16);
  // the random base point lands somewhere; all mass sits in the orbit cells
  CHECK(std::abs(pairwise_sum(h.masses) - 1.0) <= 1e-12);
  (void)planted_at_zero;
}

TEST_CASE("a strong cosine tilt pushes histogram mass toward the peak") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 2.0}}}, sys);
  const WeightedEnsemble ens = build_ensemble(sys, pot, 12, 50000, 43);
  const HistogramMeasure h = equilibrium_histogram(ens, 16);
  // cells around x = 0 versus cells around x = 1/2
  const double near_peak = h.masses[0] + h.masses[15];
  const double near_trough = h.masses[7] + h.masses[8];
  CHECK(near_peak > near_trough);
}

TEST_CASE("concentration mass increases with n") {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 0.5}}}, sys);
  const TestFunctionBasis basis(1, 8);
  const auto reference = oracle_gibbs_moments(build_operator(sys, pot, 512), basis, 8);
  double previous = -1.0;
  for (int n : {4, 8, 16}) {
    const WeightedEnsemble ens = build_ensemble(sys, pot, n, 50000, 47);
    const double mass = concentration_mass(ens, basis, reference, 0.1);
    CHECK(mass >= previous);
    previous = mass;
  }
}
