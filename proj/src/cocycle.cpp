#include "preslab/cocycle.hpp"

#include <cmath>
#include <stdexcept>

namespace preslab {

namespace {

// Largest singular value of a 2x2 matrix, exact closed form.
double top_singular_value(const std::array<double, 4>& m) {
  const double s = std::hypot(m[0] + m[3], m[1] - m[2]);
  const double t = std::hypot(m[0] - m[3], m[1] + m[2]);
  return 0.5 * (s + t);
}

}  // namespace

CocycleAccumulator::CocycleAccumulator(int dim) : dim_(dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("cocycle: dim must be 1 or 2");
}

void CocycleAccumulator::push(const Jacobian& j) {
  const double det = j.det();
  if (det == 0.0) throw std::invalid_argument("cocycle: singular Jacobian step");
  log_abs_det_ += std::log(std::abs(det));
  ++steps_;
  if (dim_ == 1) return;  // the determinant sum is the whole spectrum

  const std::array<double, 4> p = b_;
  std::array<double, 4> q;
  q[0] = j.m[0] * p[0] + j.m[1] * p[2];
  q[1] = j.m[0] * p[1] + j.m[1] * p[3];
  q[2] = j.m[2] * p[0] + j.m[3] * p[2];
  q[3] = j.m[2] * p[1] + j.m[3] * p[3];
  const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  scale_log_ += std::log(norm);
  for (int i = 0; i < 4; ++i) b_[i] = q[i] / norm;
}

CocycleSpectrum CocycleAccumulator::spectrum() const {
  CocycleSpectrum spec;
  spec.steps = steps_;
  spec.dim = dim_;
  if (dim_ == 1) {
    spec.log_sv[0] = log_abs_det_;
    return spec;
  }
  double l1 = scale_log_ + std::log(top_singular_value(b_));
  // sigma_1 >= sqrt(sigma_1 sigma_2) always; enforce against rounding
  l1 = std::max(l1, 0.5 * log_abs_det_);
  spec.log_sv[0] = l1;
  spec.log_sv[1] = log_abs_det_ - l1;
  return spec;
}

double CocycleAccumulator::log_wedge_norm() const {
  if (dim_ == 1) return std::max(0.0, log_abs_det_);
  const CocycleSpectrum spec = spectrum();
  return std::max({0.0, spec.log_sv[0], log_abs_det_});
}

CocycleSpectrum cocycle_spectrum(const SmoothSystem& system, const Point& x, int n) {
  if (n < 1) throw std::invalid_argument("cocycle_spectrum: n must be >= 1");
  CocycleAccumulator acc(system.dim);
  Point p = x;
  for (int i = 0; i < n; ++i) {
    acc.push(system.jacobian(p));
    p = system.map(p);
  }
  return acc.spectrum();
}

double log_wedge_norm(const CocycleSpectrum& spec) {
  double best = 0.0;  // j = 0 term
  double partial = 0.0;
  for (int j = 0; j < spec.dim; ++j) {
    partial += spec.log_sv[static_cast<std::size_t>(j)];
    best = std::max(best, partial);
  }
  return best;
}

}  // namespace preslab
