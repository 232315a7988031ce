#include "preslab/systems.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace preslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Entropy of x -> M x mod 1: sum of log|lambda_i| over eigenvalues of modulus
// above one. Recorded only when the matrix is hyperbolic.
std::optional<double> toral_entropy(const std::array<std::array<int, 2>, 2>& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = static_cast<double>(m[0][0]) * m[1][1] - static_cast<double>(m[0][1]) * m[1][0];
  const double disc = tr * tr - 4.0 * det;
  double a1, a2;  // |lambda_1|, |lambda_2|
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    a1 = std::abs((tr + s) / 2.0);
    a2 = std::abs((tr - s) / 2.0);
  } else {
    a1 = a2 = std::sqrt(std::abs(det));
  }
  constexpr double tol = 1e-12;
  if (std::abs(a1 - 1.0) < tol || std::abs(a2 - 1.0) < tol) return std::nullopt;
  double h = 0.0;
  if (a1 > 1.0) h += std::log(a1);
  if (a2 > 1.0) h += std::log(a2);
  return h > 0.0 ? std::optional<double>(h) : std::nullopt;
}

}  // namespace

SmoothSystem make_expanding_circle(int k, double eps) {
  if (k < 2) throw std::invalid_argument("expanding circle map needs degree k >= 2");
  if (!(k - kTwoPi * std::abs(eps) > 1.0))
    throw std::invalid_argument("expanding circle map: k - 2*pi*|eps| > 1 violated");

  SmoothSystem sys;
  sys.name = eps == 0.0 ? "circle-x" + std::to_string(k)
                        : "circle-x" + std::to_string(k) + "-perturbed";
  sys.dim = 1;
  sys.map = [k, eps](const Point& p) {
    return make_point1(k * p.x[0] + eps * std::sin(kTwoPi * p.x[0]));
  };
  sys.jacobian = [k, eps](const Point& p) {
    Jacobian j;
    j.dim = 1;
    j.m[0] = k + kTwoPi * eps * std::cos(kTwoPi * p.x[0]);
    return j;
  };
  sys.abs_det_min = k - kTwoPi * std::abs(eps);
  sys.abs_det_max = k + kTwoPi * std::abs(eps);
  if (eps == 0.0) sys.known_entropy = std::log(static_cast<double>(k));
  sys.circle = SmoothSystem::CircleParams{k, eps};
  return sys;
}

SmoothSystem make_torus_endomorphism(const std::array<std::array<int, 2>, 2>& m) {
  const long det = static_cast<long>(m[0][0]) * m[1][1] - static_cast<long>(m[0][1]) * m[1][0];
  if (det == 0) throw std::invalid_argument("torus endomorphism: matrix is singular");

  SmoothSystem sys;
  sys.name = "torus-linear";
  sys.dim = 2;
  const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  sys.map = [a, b, c, d](const Point& p) {
    return make_point2(a * p.x[0] + b * p.x[1], c * p.x[0] + d * p.x[1]);
  };
  Jacobian jac;
  jac.dim = 2;
  jac.m = {a, b, c, d};
  sys.jacobian = [jac](const Point&) { return jac; };
  sys.abs_det_min = sys.abs_det_max = std::abs(static_cast<double>(det));
  sys.known_entropy = toral_entropy(m);
  return sys;
}

Potential make_potential(const PotentialSpec& spec, const SmoothSystem& system) {
  if (const auto* c = std::get_if<ConstantPotentialSpec>(&spec)) {
    const double v = c->value;
    Potential p;
    p.name = "constant";
    p.eval = [v](const Point&) { return v; };
    p.sup_bound = std::abs(v);
    return p;
  }
  if (const auto* t = std::get_if<TrigPotentialSpec>(&spec)) {
    if (t->coeffs.empty()) throw std::invalid_argument("trig potential: empty coefficient list");
    int max_index = 0;
    double bound = 0.0;
    for (const auto& [k, a] : t->coeffs) {
      if (k < 1) throw std::invalid_argument("trig potential: basis indices are 1-based");
      max_index = std::max(max_index, k);
      bound += std::abs(a);
    }
    auto basis = std::make_shared<TestFunctionBasis>(system.dim, max_index);
    auto coeffs = t->coeffs;
    Potential p;
    p.name = "trig";
    p.eval = [basis, coeffs](const Point& x) {
      double v = 0.0;
      for (const auto& [k, a] : coeffs) v += a * basis->eval(k, x);
      return v;
    };
    p.sup_bound = bound;
    return p;
  }
  const auto& g = std::get<GeometricPotentialSpec>(spec);
  if (!(system.abs_det_min > 0.0))
    throw std::invalid_argument("geometric potential: |det Df| not bounded away from zero");
  const double t = g.t;
  auto jac = system.jacobian;
  Potential p;
  p.name = "geometric";
  p.eval = [t, jac](const Point& x) { return -t * std::log(std::abs(jac(x).det())); };
  p.sup_bound = std::abs(t) * std::max(std::abs(std::log(system.abs_det_min)),
                                       std::abs(std::log(system.abs_det_max)));
  return p;
}

Potential add_potentials(const Potential& a, const Potential& b) {
  Potential p;
  p.name = a.name + "+" + b.name;
  auto ea = a.eval, eb = b.eval;
  p.eval = [ea, eb](const Point& x) { return ea(x) + eb(x); };
  p.sup_bound = a.sup_bound + b.sup_bound;
  return p;
}

Potential tilt_potential(const Potential& base, std::span<const double> beta,
                         const TestFunctionBasis& basis, std::span<const int> obs) {
  if (beta.size() != obs.size())
    throw std::invalid_argument("tilt_potential: beta/observable size mismatch");
  auto basis_copy = std::make_shared<TestFunctionBasis>(basis);
  std::vector<double> bv(beta.begin(), beta.end());
  std::vector<int> ov(obs.begin(), obs.end());
  auto eb = base.eval;
  Potential p;
  p.name = base.name + "+tilt";
  p.eval = [eb, basis_copy, bv, ov](const Point& x) {
    double v = eb(x);
    for (std::size_t c = 0; c < bv.size(); ++c) v += bv[c] * basis_copy->eval(ov[c], x);
    return v;
  };
  double bound = base.sup_bound;
  for (double b : bv) bound += std::abs(b);
  p.sup_bound = bound;
  return p;
}

double jacobian_selfcheck(const SmoothSystem& system, std::int64_t samples, std::uint64_t seed) {
  const double h = 1e-5;
  const auto pts = sample_uniform(system.dim, samples, seed);
  double worst = 0.0;
  for (const Point& p : pts) {
    const Jacobian jac = system.jacobian(p);
    for (int c = 0; c < system.dim; ++c) {
      Point plus = p, minus = p;
      plus.x[c] = wrap_unit(p.x[c] + h);
      minus.x[c] = wrap_unit(p.x[c] - h);
      const Point fp = system.map(plus);
      const Point fm = system.map(minus);
      for (int r = 0; r < system.dim; ++r) {
        // shortest representative of the image displacement on the torus
        double diff = fp.x[r] - fm.x[r];
        diff -= std::round(diff);
        const double fd = diff / (2.0 * h);
        const double exact = jac.m[static_cast<std::size_t>(r * 2 + c)];
        worst = std::max(worst, std::abs(fd - exact));
      }
    }
  }
  return worst;
}

}  // namespace preslab
