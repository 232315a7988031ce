#include "preslab/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "preslab/reduce.hpp"

namespace preslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Solve k y + eps sin(2 pi y) = target by safeguarded Newton; the lifted map
// is strictly increasing, so the root is unique.
double branch_preimage(int k, double eps, double target) {
  double y = target / k;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double f = k * y + eps * std::sin(kTwoPi * y) - target;
    if (f > 0.0) hi = y; else lo = y;
    const double fp = k + kTwoPi * eps * std::cos(kTwoPi * y);
    double step = f / fp;
    double next = y - step;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - y) < 1e-15) return next;
    y = next;
  }
  return y;
}

void matvec(const std::vector<double>& a, int m, const std::vector<double>& x,
            std::vector<double>& out) {
#pragma omp parallel for schedule(static)
  for (int r = 0; r < m; ++r) {
    const double* row = &a[static_cast<std::size_t>(r) * static_cast<std::size_t>(m)];
    double s = 0.0;
    for (int c = 0; c < m; ++c) s += row[c] * x[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = s;
  }
}

void matvec_transpose(const std::vector<double>& a, int m, const std::vector<double>& x,
                      std::vector<double>& out) {
#pragma omp parallel for schedule(static)
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int r = 0; r < m; ++r)
      s += a[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) + static_cast<std::size_t>(c)] *
           x[static_cast<std::size_t>(r)];
    out[static_cast<std::size_t>(c)] = s;
  }
}

struct PowerResult {
  std::vector<double> vec;
  double eigenvalue = 0.0;
  int iterations = 0;
};

constexpr double kPowerTolerance = 1e-13;
constexpr int kPowerMaxIterations = 100000;

// Iterates on max-normalized positive vectors; the eigenvalue estimate is the
// mass ratio of consecutive iterates.
template <class MatVec>
PowerResult power_iterate(int m, const MatVec& apply) {
  PowerResult res;
  res.vec.assign(static_cast<std::size_t>(m), 1.0);
  std::vector<double> next(static_cast<std::size_t>(m));
  for (int it = 1; it <= kPowerMaxIterations; ++it) {
    apply(res.vec, next);
    res.eigenvalue = pairwise_sum(next) / pairwise_sum(res.vec);
    double scale = 0.0;
    for (double v : next) scale = std::max(scale, std::abs(v));
    double diff = 0.0;
    for (int i = 0; i < m; ++i) {
      next[static_cast<std::size_t>(i)] /= scale;
      diff = std::max(diff,
                      std::abs(next[static_cast<std::size_t>(i)] - res.vec[static_cast<std::size_t>(i)]));
    }
    res.vec.swap(next);
    res.iterations = it;
    if (diff < kPowerTolerance) return res;
  }
  throw std::runtime_error("transfer operator: power iteration did not converge");
}

}  // namespace

TransferOperatorModel build_operator(const SmoothSystem& system, const Potential& potential,
                                     int grid_size) {
  if (!system.circle)
    throw std::invalid_argument("transfer operator: system is not an expanding circle map");
  if (grid_size < 8) throw std::invalid_argument("transfer operator: grid too small");

  const int k = system.circle->degree;
  const double eps = system.circle->eps;
  const int m = grid_size;

  TransferOperatorModel model;
  model.degree = k;
  model.eps = eps;
  model.grid_size = m;
  model.matrix.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < m; ++j) {
    double* row = &model.matrix[static_cast<std::size_t>(j) * static_cast<std::size_t>(m)];
    const double x = static_cast<double>(j) / m;
    for (int b = 0; b < k; ++b) {
      const double y = branch_preimage(k, eps, x + b);
      const double weight = std::exp(potential.eval(make_point1(y)));
      const double t = y * m;
      const auto i0 = static_cast<long>(std::floor(t));
      const double fr = t - static_cast<double>(i0);
      // 4-point Lagrange stencil at integer offsets -1..2, periodic
      const double w[4] = {-fr * (fr - 1.0) * (fr - 2.0) / 6.0,
                           (fr * fr - 1.0) * (fr - 2.0) / 2.0,
                           -fr * (fr + 1.0) * (fr - 2.0) / 2.0,
                           fr * (fr * fr - 1.0) / 6.0};
      for (int s = 0; s < 4; ++s) {
        const long idx = ((i0 + s - 1) % m + m) % m;
        row[idx] += weight * w[s];
      }
    }
  }

  PowerResult right = power_iterate(
      m, [&](const std::vector<double>& x, std::vector<double>& out) { matvec(model.matrix, m, x, out); });
  PowerResult left = power_iterate(m, [&](const std::vector<double>& x, std::vector<double>& out) {
    matvec_transpose(model.matrix, m, x, out);
  });

  model.eigenvalue = right.eigenvalue;
  model.iterations = right.iterations + left.iterations;

  // normalize: sum rho = 1, then sum rho h = 1
  const double rho_sum = pairwise_sum(left.vec);
  for (double& v : left.vec) v /= rho_sum;
  std::vector<double> prod(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    prod[static_cast<std::size_t>(i)] =
        left.vec[static_cast<std::size_t>(i)] * right.vec[static_cast<std::size_t>(i)];
  const double inner = pairwise_sum(prod);
  for (double& v : right.vec) v /= inner;

  model.left_vec = std::move(left.vec);
  model.right_vec = std::move(right.vec);

  std::vector<double> image(static_cast<std::size_t>(m));
  matvec(model.matrix, m, model.right_vec, image);
  double residual = 0.0;
  for (int i = 0; i < m; ++i)
    residual = std::max(residual, std::abs(image[static_cast<std::size_t>(i)] -
                                           model.eigenvalue * model.right_vec[static_cast<std::size_t>(i)]));
  model.residual = residual;
  return model;
}

std::vector<double> oracle_gibbs_moments(const TransferOperatorModel& model,
                                         const TestFunctionBasis& basis, int K) {
  const int m = model.grid_size;
  std::vector<double> out(static_cast<std::size_t>(K));
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (int k = 1; k <= K; ++k) {
    for (int i = 0; i < m; ++i)
      terms[static_cast<std::size_t>(i)] = model.left_vec[static_cast<std::size_t>(i)] *
                                           model.right_vec[static_cast<std::size_t>(i)] *
                                           basis.eval(k, make_point1(static_cast<double>(i) / m));
    out[static_cast<std::size_t>(k - 1)] = pairwise_sum(terms);
  }
  return out;
}

double gibbs_mean(const TransferOperatorModel& model, const Potential& fn) {
  const int m = model.grid_size;
  std::vector<double> terms(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    terms[static_cast<std::size_t>(i)] = model.left_vec[static_cast<std::size_t>(i)] *
                                         model.right_vec[static_cast<std::size_t>(i)] *
                                         fn.eval(make_point1(static_cast<double>(i) / m));
  return pairwise_sum(terms);
}

}  // namespace preslab
