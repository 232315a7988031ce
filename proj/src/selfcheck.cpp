#include "preslab/selfcheck.hpp"

#include <cmath>
#include <numbers>

#include "preslab/cocycle.hpp"
#include "preslab/empirical.hpp"
#include "preslab/equilibrium.hpp"
#include "preslab/ldp.hpp"
#include "preslab/manifold.hpp"
#include "preslab/oracle.hpp"
#include "preslab/pressure.hpp"
#include "preslab/reduce.hpp"
#include "preslab/rng.hpp"
#include "preslab/systems.hpp"

namespace preslab {

namespace {

double rand_in(std::uint64_t seed, std::uint64_t idx, double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, idx);
}

SuiteResult check(const std::string& name, double worst, double limit, std::string detail = {}) {
  SuiteResult r;
  r.name = name;
  r.worst = worst;
  r.limit = limit;
  r.pass = worst <= limit;
  r.detail = std::move(detail);
  return r;
}

SuiteResult metric_axioms(std::uint64_t seed) {
  constexpr int kTrials = 300;
  constexpr int K = 8;
  double worst = 0.0;
  std::uint64_t ctr = 0;
  for (int t = 0; t < kTrials; ++t) {
    std::vector<double> a(K), b(K), c(K);
    for (int k = 0; k < K; ++k) {
      a[k] = rand_in(seed, ctr++, -1.0, 1.0);
      b[k] = rand_in(seed, ctr++, -1.0, 1.0);
      c[k] = rand_in(seed, ctr++, -1.0, 1.0);
    }
    const double dab = weak_distance(a, b);
    const double dba = weak_distance(b, a);
    const double dac = weak_distance(a, c);
    const double dcb = weak_distance(c, b);
    worst = std::max(worst, -dab);                      // nonnegativity
    worst = std::max(worst, std::abs(dab - dba));       // symmetry
    worst = std::max(worst, dab - (dac + dcb));         // triangle
    worst = std::max(worst, std::abs(weak_distance(a, a)));  // identity
    worst = std::max(worst, dab - 2.0);                 // bound from unit sup norms
  }
  return check("metric-axioms", worst, 1e-12);
}

SuiteResult basis_sup_norm(std::uint64_t seed) {
  double worst = 0.0;
  for (int dim = 1; dim <= 2; ++dim) {
    const TestFunctionBasis basis(dim, default_basis_size(dim));
    const auto pts = sample_uniform(dim, 10000, seed + dim);
    for (const Point& p : pts)
      for (int k = 1; k <= basis.size(); ++k)
        worst = std::max(worst, std::abs(basis.eval(k, p)) - 1.0);
  }
  return check("basis-sup-norm", worst, 1e-12);
}

SuiteResult histogram_mass(std::uint64_t seed) {
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = trial % 2 + 1;
    const auto pts = sample_uniform(dim, 500, seed + 100 + trial);
    std::vector<double> w(pts.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = rand_in(seed, 7000 + trial * 1000 + static_cast<std::uint64_t>(i), 0.0, 3.0);
    const HistogramMeasure h = histogram(pts, w, 8);
    double total = 0.0;
    double min_mass = 0.0;
    for (double m : h.masses) {
      total += m;
      min_mass = std::min(min_mass, m);
    }
    worst = std::max(worst, std::abs(total - 1.0));
    worst = std::max(worst, -min_mass);
  }
  return check("histogram-normalization", worst, 1e-12);
}

SuiteResult systems_stay_on_torus(std::uint64_t seed) {
  const SmoothSystem systems[] = {make_expanding_circle(2, 0.0), make_expanding_circle(2, 0.05),
                                  make_torus_endomorphism({{{2, 1}, {1, 1}}})};
  double worst = 0.0;
  for (const auto& sys : systems) {
    const auto pts = sample_uniform(sys.dim, 10000, seed + 17);
    for (const Point& p : pts) {
      const Point q = sys.map(p);
      for (int c = 0; c < sys.dim; ++c) {
        worst = std::max(worst, -q.x[c]);
        worst = std::max(worst, q.x[c] - (1.0 - 1e-18));
      }
    }
  }
  return check("systems-on-torus", worst, 0.0, "map images must stay in [0,1)");
}

SuiteResult expansion_margin(std::uint64_t) {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  double min_deriv = 1e300;
  for (int i = 0; i < 10000; ++i) {
    const Point p = make_point1(static_cast<double>(i) / 10000.0);
    min_deriv = std::min(min_deriv, sys.jacobian(p).m[0]);
  }
  return check("expansion-margin", 1.0 - min_deriv, 0.0,
               "min f' = " + std::to_string(min_deriv));
}

SuiteResult geometric_potential_doubling(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential pot = make_potential(GeometricPotentialSpec{1.0}, sys);
  double worst = 0.0;
  for (const Point& p : sample_uniform(1, 1000, seed + 23))
    worst = std::max(worst, std::abs(pot.eval(p) + std::log(2.0)));
  return check("geometric-potential-doubling", worst, 1e-14);
}

SuiteResult cocycle_determinant(std::uint64_t seed) {
  const SmoothSystem cat = make_torus_endomorphism({{{2, 1}, {1, 1}}});
  const SmoothSystem pert = make_expanding_circle(2, 0.05);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(uniform01(seed, 900 + trial) * 30.0);
    for (const auto& sys : {cat, pert}) {
      Point x;
      x.dim = sys.dim;
      for (int c = 0; c < sys.dim; ++c) x.x[c] = uniform01(seed, 1000 + trial * 4 + c);
      const CocycleSpectrum spec = cocycle_spectrum(sys, x, n);
      double det_sum = 0.0;
      Point p = x;
      for (int i = 0; i < n; ++i) {
        det_sum += std::log(std::abs(sys.jacobian(p).det()));
        p = sys.map(p);
      }
      double sv_sum = 0.0;
      for (int c = 0; c < sys.dim; ++c) sv_sum += spec.log_sv[static_cast<std::size_t>(c)];
      worst = std::max(worst, std::abs(sv_sum - det_sum));
    }
  }
  return check("cocycle-determinant", worst, 1e-8);
}

SuiteResult cocycle_submultiplicative(std::uint64_t seed) {
  const SmoothSystem cat = make_torus_endomorphism({{{2, 1}, {1, 1}}});
  const SmoothSystem pert = make_expanding_circle(3, 0.1);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(uniform01(seed, 1900 + trial) * 12.0);
    const int m = 1 + static_cast<int>(uniform01(seed, 2900 + trial) * 12.0);
    for (const auto& sys : {cat, pert}) {
      Point x;
      x.dim = sys.dim;
      for (int c = 0; c < sys.dim; ++c) x.x[c] = uniform01(seed, 3000 + trial * 4 + c);
      const double whole = log_wedge_norm(cocycle_spectrum(sys, x, n + m));
      const double head = log_wedge_norm(cocycle_spectrum(sys, x, n));
      Point mid = x;
      for (int i = 0; i < n; ++i) mid = sys.map(mid);
      const double tail = log_wedge_norm(cocycle_spectrum(sys, mid, m));
      worst = std::max(worst, whole - (head + tail));
    }
  }
  return check("cocycle-submultiplicative", worst, 1e-8);
}

SuiteResult weights_normalization(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential pot = make_potential(TrigPotentialSpec{{{1, 0.4}, {2, -0.3}}}, sys);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const WeightedEnsemble ens = build_ensemble(sys, pot, 6 + trial * 4, 20000, seed + trial);
    worst = std::max(worst, std::abs(pairwise_sum(ens.weights) - 1.0));
    double min_w = 0.0;
    for (double w : ens.weights) min_w = std::min(min_w, w);
    worst = std::max(worst, -min_w);
  }
  return check("weights-normalization", worst, 1e-12);
}

SuiteResult pressure_shift_exactness(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  PressureParams params;
  params.n_range = {4, 6, 8, 10, 12};
  params.samples = 20000;
  params.seed = seed + 5;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = rand_in(seed, 4000 + 3 * trial, -0.5, 0.5);
    const double b = rand_in(seed, 4001 + 3 * trial, -0.5, 0.5);
    const double c = rand_in(seed, 4002 + 3 * trial, -2.0, 2.0);
    const Potential gamma = make_potential(TrigPotentialSpec{{{1, a}, {4, b}}}, sys);
    const Potential shifted = add_potentials(gamma, make_potential(ConstantPotentialSpec{c}, sys));
    const double p0 = estimate_pressure(sys, gamma, params).slope;
    const double p1 = estimate_pressure(sys, shifted, params).slope;
    worst = std::max(worst, std::abs(p1 - p0 - c));
  }
  return check("pressure-shift-exactness", worst, 1e-12);
}

SuiteResult pressure_lipschitz(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  PressureParams params;
  params.n_range = {4, 6, 8, 10, 12};
  params.samples = 20000;
  params.seed = seed + 6;
  double worst = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::pair<int, double>> c1, c2;
    for (int k = 1; k <= 3; ++k) {
      c1.emplace_back(k, rand_in(seed, 5000 + trial * 8 + k, -0.5, 0.5));
      c2.emplace_back(k, rand_in(seed, 5004 + trial * 8 + k, -0.5, 0.5));
    }
    const Potential g1 = make_potential(TrigPotentialSpec{c1}, sys);
    const Potential g2 = make_potential(TrigPotentialSpec{c2}, sys);
    double sup_diff = 0.0;
    for (int i = 0; i < 4096; ++i) {
      const Point p = make_point1(static_cast<double>(i) / 4096.0);
      sup_diff = std::max(sup_diff, std::abs(g1.eval(p) - g2.eval(p)));
    }
    const double p1 = estimate_pressure(sys, g1, params).slope;
    const double p2 = estimate_pressure(sys, g2, params).slope;
    worst = std::max(worst, std::abs(p1 - p2) - sup_diff);
  }
  return check("pressure-lipschitz", worst, 0.02);
}

SuiteResult pressure_monotonicity(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  PressureParams params;
  params.n_range = {4, 6, 8, 10, 12};
  params.samples = 20000;
  params.seed = seed + 7;
  double worst = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::pair<int, double>> coeffs;
    for (int k = 1; k <= 3; ++k)
      coeffs.emplace_back(k, rand_in(seed, 6000 + trial * 4 + k, -0.5, 0.5));
    const Potential lower = make_potential(TrigPotentialSpec{coeffs}, sys);
    const double lift = rand_in(seed, 6400 + trial, 0.0, 1.0);
    const Potential upper = add_potentials(lower, make_potential(ConstantPotentialSpec{lift}, sys));
    const double pl = estimate_pressure(sys, lower, params).slope;
    const double pu = estimate_pressure(sys, upper, params).slope;
    worst = std::max(worst, pl - pu);
  }
  return check("pressure-monotonicity", worst, 0.02);
}

SuiteResult q_convexity(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential gamma = make_potential(ConstantPotentialSpec{0.0}, sys);
  const TestFunctionBasis basis(1, 1);
  const int obs[1] = {1};
  PressureParams params;
  params.n_range = {4, 6, 8, 10, 12};
  params.samples = 20000;
  params.seed = seed + 8;
  std::vector<double> q;
  for (double beta = -1.0; beta <= 1.0001; beta += 0.25) {
    const double bv[1] = {beta};
    const Potential tilted = tilt_potential(gamma, bv, basis, obs);
    q.push_back(estimate_pressure(sys, tilted, params).slope);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < q.size(); ++i)
    worst = std::max(worst, -(q[i + 1] - 2.0 * q[i] + q[i - 1]));
  return check("q-convexity", worst, 0.02);
}

SuiteResult ldp_set_monotonicity(std::uint64_t seed) {
  const SmoothSystem sys = make_expanding_circle(2, 0.0);
  const Potential gamma = make_potential(ConstantPotentialSpec{0.0}, sys);
  const std::vector<int> ns = {4, 6, 8, 10};
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double lo_outer = rand_in(seed, 8000 + 2 * trial, -0.2, 0.2);
    const double lo_inner = lo_outer + rand_in(seed, 8001 + 2 * trial, 0.0, 0.2);
    ConstraintSet inner{{1}, {lo_inner}, {1.0}};
    ConstraintSet outer{{1}, {lo_outer}, {1.0}};
    const LdpEstimate e_inner = estimate_nu_n(sys, gamma, inner, ns, 20000, seed + 9, 1);
    const LdpEstimate e_outer = estimate_nu_n(sys, gamma, outer, ns, 20000, seed + 9, 1);
    for (std::size_t r = 0; r < ns.size(); ++r)
      worst = std::max(worst, e_inner.nu[r] - e_outer.nu[r]);
  }
  return check("ldp-set-monotonicity", worst, 0.0, "nested regions, shared seed, exact ordering");
}

SuiteResult oracle_consistency(std::uint64_t) {
  const SmoothSystem sys = make_expanding_circle(2, 0.05);
  const Potential gamma = make_potential(TrigPotentialSpec{{{1, 0.5}}}, sys);
  const TransferOperatorModel model = build_operator(sys, gamma, 512);
  double worst = 0.0;
  // variational identity: entropy + mean potential = pressure by construction
  const double mean = gibbs_mean(model, gamma);
  worst = std::max(worst, std::abs(oracle_entropy(model, mean) + mean - oracle_pressure(model)));
  worst = std::max(worst, model.residual / model.eigenvalue);
  // eigenvector normalization backing the quadrature
  std::vector<double> prod(model.left_vec.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = model.left_vec[i] * model.right_vec[i];
  worst = std::max(worst, std::abs(pairwise_sum(model.left_vec) - 1.0));
  worst = std::max(worst, std::abs(pairwise_sum(prod) - 1.0));
  // shift covariance
  const Potential shifted = add_potentials(gamma, make_potential(ConstantPotentialSpec{0.37}, sys));
  const TransferOperatorModel model_shift = build_operator(sys, shifted, 512);
  worst = std::max(worst, std::abs(oracle_pressure(model_shift) - oracle_pressure(model) - 0.37));
  // entropy within [0, log degree]
  const double h = oracle_entropy(model, mean);
  worst = std::max(worst, -h);
  worst = std::max(worst, h - std::log(2.0));
  return check("oracle-consistency", worst, 1e-10);
}

}  // namespace

std::vector<SuiteResult> run_selfcheck(std::uint64_t seed) {
  std::vector<SuiteResult> results;
  results.push_back(metric_axioms(seed));
  results.push_back(basis_sup_norm(seed));
  results.push_back(histogram_mass(seed));
  results.push_back(systems_stay_on_torus(seed));
  results.push_back(expansion_margin(seed));
  results.push_back(geometric_potential_doubling(seed));
  results.push_back(cocycle_determinant(seed));
  results.push_back(cocycle_submultiplicative(seed));
  results.push_back(weights_normalization(seed));
  results.push_back(pressure_shift_exactness(seed));
  results.push_back(pressure_lipschitz(seed));
  results.push_back(pressure_monotonicity(seed));
  results.push_back(q_convexity(seed));
  results.push_back(ldp_set_monotonicity(seed));
  results.push_back(oracle_consistency(seed));
  return results;
}

}  // namespace preslab
