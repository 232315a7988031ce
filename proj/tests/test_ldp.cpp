#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>

#include "preslab/ldp.hpp"

using namespace preslab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

SmoothSystem doubling() { return make_expanding_circle(2, 0.0); }

}  // namespace

TEST_CASE("the unconstrained mass is one with zero slope") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const ConstraintSet cs{{1}, {-kInf}, {kInf}};
  const std::vector<int> ns = {4, 6, 8};
  const LdpEstimate est = estimate_nu_n(sys, zero, cs, ns, 5000, 3);
  for (double nu : est.nu) CHECK(nu == 1.0);
  CHECK(est.slope == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("an empty constraint region has zero mass throughout") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const ConstraintSet cs{{1}, {0.5}, {0.2}};  // lo > hi encodes the empty set
  const std::vector<int> ns = {4, 6, 8};
  const LdpEstimate est = estimate_nu_n(sys, zero, cs, ns, 5000, 3);
  for (double nu : est.nu) CHECK(nu == 0.0);
  CHECK(!est.slope_defined);
  for (double l : est.log_nu_over_n) CHECK(l == -kInf);
}

TEST_CASE("nested regions have pointwise ordered mass, exactly") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> ns = {4, 6, 8, 10, 12};
  const ConstraintSet inner{{1}, {0.3}, {0.8}};
  const ConstraintSet outer{{1}, {0.2}, {1.0}};
  const LdpEstimate e_in = estimate_nu_n(sys, zero, inner, ns, 50000, 5, 1);
  const LdpEstimate e_out = estimate_nu_n(sys, zero, outer, ns, 50000, 5, 1);
  for (std::size_t r = 0; r < ns.size(); ++r) {
    CHECK(e_in.nu[r] <= e_out.nu[r]);
    CHECK(e_in.nu[r] >= 0.0);
    CHECK(e_out.nu[r] <= 1.0);
    CHECK(e_in.count[r] <= e_out.count[r]);
  }
}

TEST_CASE("constrained mass decays for a region away from equilibrium") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const ConstraintSet cs{{1}, {0.3}, {1.0}};
  const std::vector<int> ns = {6, 8, 10, 12, 14, 16};
  const LdpEstimate est = estimate_nu_n(sys, zero, cs, ns, 200000, 7);
  REQUIRE(est.slope_defined);
  CHECK(est.slope < -0.05);
  CHECK(est.slope > -0.2);
}

TEST_CASE("rate table is convex with a minimum near the equilibrium moment") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  PressureParams params;
  params.n_range = {6, 8, 10, 12};
  params.samples = 30000;
  params.seed = 11;
  const auto alpha = make_grid(-1.0, 1.0, 0.05);
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);

  CHECK(table.min_value <= 0.02);
  CHECK(std::abs(table.alpha_at_min[0]) <= 0.05 + 1e-12);
  for (double v : table.values) CHECK(v >= -0.02);
  // exactly convex along the grid: a max of affine functions of alpha
  for (std::size_t i = 1; i + 1 < table.values.size(); ++i)
    CHECK(table.values[i + 1] - 2.0 * table.values[i] + table.values[i - 1] >= -1e-9);
  // the zero tilt pins Q(0) = 0, so J >= 0 holds structurally
  bool has_zero_q = false;
  for (std::size_t b = 0; b < table.beta_axis.size(); ++b)
    if (table.beta_axis[b] == 0.0 && table.q_values[b] == 0.0) has_zero_q = true;
  CHECK(has_zero_q);
}

TEST_CASE("unreachable moments are flagged as capped") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  PressureParams params;
  params.n_range = {4, 6, 8};
  params.samples = 10000;
  params.seed = 13;
  const auto alpha = make_grid(-1.3, 1.3, 0.05);
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  for (std::size_t ai = 0; ai < table.alpha_nodes(); ++ai) {
    const double a = table.alpha_at(ai)[0];
    if (std::abs(a) > 1.0 + 1e-9) {
      CHECK(table.capped[ai] == 1);
      CHECK(table.values[ai] > 0.0);
    }
    if (std::abs(a) < 0.3) CHECK(table.capped[ai] == 0);
  }
}

TEST_CASE("two-dimensional constraints nest exactly as well") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> ns = {4, 6, 8};
  const ConstraintSet inner{{1, 2}, {-0.2, -0.2}, {0.2, 0.2}};
  const ConstraintSet outer{{1, 2}, {-0.4, -0.4}, {0.4, 0.4}};
  const LdpEstimate e_in = estimate_nu_n(sys, zero, inner, ns, 20000, 71, 1);
  const LdpEstimate e_out = estimate_nu_n(sys, zero, outer, ns, 20000, 71, 1);
  for (std::size_t r = 0; r < ns.size(); ++r) {
    CHECK(e_in.nu[r] <= e_out.nu[r]);
    CHECK(e_out.nu[r] <= 1.0);
  }
  // the box around the equilibrium moment eventually holds most of the mass
  CHECK(e_out.nu.back() > 0.5);
}

TEST_CASE("rate tables over two observables") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1, 2};  // cos and sin of the base frequency
  PressureParams params;
  params.n_range = {4, 6, 8};
  params.samples = 5000;
  params.seed = 37;
  const auto alpha = make_grid(-0.6, 0.6, 0.2);
  const auto beta = make_grid(-1.0, 1.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha, alpha}, beta, params);
  REQUIRE(table.alpha_nodes() == alpha.size() * alpha.size());
  REQUIRE(table.q_values.size() == beta.size() * beta.size());
  REQUIRE(table.beta_argmax.size() == 2 * table.alpha_nodes());
  for (double v : table.values) CHECK(v >= -1e-12);
  // flattening round-trips: alpha_at inverts the row-major layout
  const std::size_t probe = 2 * alpha.size() + 5;
  const auto a = table.alpha_at(probe);
  CHECK(a[0] == alpha[2]);
  CHECK(a[1] == alpha[5]);
  // the volume is the equilibrium state: both moments vanish there
  CHECK(std::abs(table.alpha_at_min[0]) <= 0.2 + 1e-12);
  CHECK(std::abs(table.alpha_at_min[1]) <= 0.2 + 1e-12);
}

TEST_CASE("asymmetric tilt grids are rejected") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  PressureParams params;
  params.n_range = {4, 6, 8};
  params.samples = 1000;
  params.seed = 1;
  const auto alpha = make_grid(-1.0, 1.0, 0.1);
  const auto bad_beta = make_grid(-2.0, 4.0, 0.25);
  CHECK_THROWS_AS(rate_function(sys, zero, obs, {alpha}, bad_beta, params),
                  std::invalid_argument);
}

TEST_CASE("tilting the potential recenters the constrained mass") {
  // with the tilt beta matched to a moment level, the region around that level
  // carries most of the weight and its mass grows toward one
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const TestFunctionBasis basis(1, 1);
  const std::vector<int> obs = {1};
  const double beta_val[1] = {1.0};
  const Potential tilted = tilt_potential(zero, beta_val, basis, obs);

  PressureParams params;
  params.n_range = {6, 8, 10, 12, 14, 16};
  params.samples = 50000;
  params.seed = 17;
  // equilibrium moment of the tilted potential from the common-random-number route
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const auto alpha = make_grid(-1.0, 1.0, 0.05);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  // slope of Q at beta=1 approximates the tilted equilibrium moment
  std::size_t b_lo = 0, b_hi = 0;
  for (std::size_t b = 0; b < beta.size(); ++b) {
    if (beta[b] == 0.75) b_lo = b;
    if (beta[b] == 1.25) b_hi = b;
  }
  const double alpha_eps = (table.q_values[b_hi] - table.q_values[b_lo]) / 0.5;

  const ConstraintSet around{{1}, {alpha_eps - 0.3}, {alpha_eps + 0.3}};
  const LdpEstimate est = estimate_nu_n(sys, tilted, around, params.n_range, params.samples,
                                        params.seed, 1);
  CHECK(est.nu.back() > 0.8);
  CHECK(est.nu.back() >= est.nu.front());
}

TEST_CASE("contraction report compares decay against the rate table") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  const ConstraintSet cs{{1}, {0.3}, {1.0}};
  PressureParams params;
  params.n_range = {6, 8, 10, 12, 14, 16};
  params.samples = 100000;
  params.seed = 19;
  const auto alpha = make_grid(-1.0, 1.0, 0.05);
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  const LdpEstimate est =
      estimate_nu_n(sys, zero, cs, params.n_range, params.samples, params.seed);
  const ContractionReport report = contraction_report(est, table, cs);
  CHECK(report.decay_defined);
  CHECK(report.alpha_at_region_min[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(report.j_region > 0.0);
  CHECK(report.decay_rate > 0.0);
}

TEST_CASE("a region containing the equilibrium moment has tiny rate and slope") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  const ConstraintSet cs{{1}, {-0.5}, {0.5}};
  PressureParams params;
  params.n_range = {6, 8, 10, 12};
  params.samples = 50000;
  params.seed = 23;
  const auto alpha = make_grid(-1.0, 1.0, 0.05);
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  const LdpEstimate est =
      estimate_nu_n(sys, zero, cs, params.n_range, params.samples, params.seed);
  const ContractionReport report = contraction_report(est, table, cs);
  CHECK(std::abs(report.j_region) <= 0.02);
  CHECK(std::abs(report.decay_rate) <= 0.02);
}

TEST_CASE("undetectable decay is flagged instead of reported") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  const ConstraintSet cs{{1}, {0.97}, {1.0}};
  PressureParams params;
  params.n_range = {8, 10, 12, 14};
  params.samples = 20000;
  params.seed = 29;
  const auto alpha = make_grid(-1.0, 1.0, 0.05);
  const auto beta = make_grid(-4.0, 4.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  const LdpEstimate est =
      estimate_nu_n(sys, zero, cs, params.n_range, params.samples, params.seed);
  const ContractionReport report = contraction_report(est, table, cs);
  CHECK(!report.decay_defined);
  CHECK(report.too_fast_to_measure);
  CHECK(!report.note.empty());
}

TEST_CASE("a region off the table grid is an error") {
  const SmoothSystem sys = doubling();
  const Potential zero = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> obs = {1};
  PressureParams params;
  params.n_range = {4, 6, 8};
  params.samples = 5000;
  params.seed = 31;
  const auto alpha = make_grid(-0.5, 0.5, 0.05);
  const auto beta = make_grid(-2.0, 2.0, 0.25);
  const RateFunctionTable table = rate_function(sys, zero, obs, {alpha}, beta, params);
  LdpEstimate dummy;
  const ConstraintSet cs{{1}, {0.7}, {0.9}};
  CHECK_THROWS_AS(contraction_report(dummy, table, cs), std::invalid_argument);
}
