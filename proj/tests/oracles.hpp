#ifndef CONTACTGEO_TESTS_ORACLES_HPP
#define CONTACTGEO_TESTS_ORACLES_HPP

// Independent reference computations for the test suites. Nothing here may
// call the closed forms it is used to check.

#include <cmath>

#include "contactgeo/linalg.hpp"

namespace contactgeo::oracles {

/// Matrix exponential by scaling-and-squaring with a 20-term power series
/// on the scaled matrix.
inline Mat expm_series(const Mat& m) {
  const int d = static_cast<int>(m.rows());
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat x = scale * m;
  Mat sum = Mat::Identity(d, d);
  Mat term = Mat::Identity(d, d);
  for (int k = 1; k <= 20; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Naive triple-loop matrix product, independent of Eigen's kernels.
inline Mat naive_product(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  const int m = static_cast<int>(b.cols());
  Mat out = Mat::Zero(n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m; ++c)
      for (int l = 0; l < k; ++l) out(r, c) += a(r, l) * b(l, c);
  return out;
}

/// Exterior derivative of alpha(v)|_p = p^t A v evaluated on tangent u, v
/// by central differences along the surface patch (s,t) -> n(p + s u + t v):
/// d alpha(u, v) = d/ds alpha(d gamma/dt) - d/dt alpha(d gamma/ds) at 0.
inline double exterior_derivative_fd(const Mat& a, const Vec& p, const Vec& u, const Vec& v,
                                     double h = 1e-4) {
  auto gamma = [&](double s, double t) -> Vec {
    Vec w = p + s * u + t * v;
    return w / w.norm();
  };
  auto partial = [&](double s, double t, const Vec& dir) -> Vec {
    const Vec w = p + s * u + t * v;
    const double n = w.norm();
    return dir / n - w * (w.dot(dir) / (n * n * n));
  };
  auto alpha = [&](const Vec& at, const Vec& vec) { return at.dot(a * vec); };
  const double ds =
      (alpha(gamma(h, 0), partial(h, 0, v)) - alpha(gamma(-h, 0), partial(-h, 0, v))) / (2 * h);
  const double dt =
      (alpha(gamma(0, h), partial(0, h, u)) - alpha(gamma(0, -h), partial(0, -h, u))) / (2 * h);
  return ds - dt;
}

}  // namespace contactgeo::oracles

#endif  // CONTACTGEO_TESTS_ORACLES_HPP
