#pragma once

#include <array>

#include "preslab/systems.hpp"

namespace preslab {

// Log singular values of the n-step Jacobian product, descending.
struct CocycleSpectrum {
  int steps = 0;
  int dim = 1;
  std::array<double, 2> log_sv{0.0, 0.0};
};

// Stable step-by-step accumulation of D_x f^n. The running product is kept
// rescaled to unit Frobenius norm with the scale tracked in log domain, so no
// intermediate value overflows. The top singular value of the rescaled product
// is well conditioned at any n; the second follows from the per-step
// determinant sum, which is exact in log domain.
class CocycleAccumulator {
 public:
  explicit CocycleAccumulator(int dim);

  void push(const Jacobian& j);
  CocycleSpectrum spectrum() const;
  double log_wedge_norm() const;
  double log_abs_det() const { return log_abs_det_; }
  int steps() const { return steps_; }

 private:
  int dim_;
  int steps_ = 0;
  std::array<double, 4> b_{1.0, 0.0, 0.0, 1.0};  // rescaled running product (dim 2)
  double scale_log_ = 0.0;
  double log_abs_det_ = 0.0;
};

CocycleSpectrum cocycle_spectrum(const SmoothSystem& system, const Point& x, int n);

// log max_{0 <= j <= dim} prod of the j largest singular values; j = 0
// contributes 1, so the result is never negative.
double log_wedge_norm(const CocycleSpectrum& spec);

}  // namespace preslab
