#include "contactgeo/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace contactgeo {

void require_unit(const Vec& v, double tol, const std::string& what) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw std::invalid_argument(what + ": expected a unit vector, |v| = " + std::to_string(n));
  }
}

namespace {

// Reflection H = id - 2 w w^t / (w^t w) with w = p + sign(p_1) e_1, so that
// H p = -sign(p_1) e_1. Applies H to the trailing columns of the identity.
Mat householder_complement(const Vec& p, int skip) {
  const int k = static_cast<int>(p.size());
  const double sigma = p[0] >= 0.0 ? 1.0 : -1.0;
  Vec w = p;
  w[0] += sigma;
  const double ww = w.squaredNorm();
  Mat frame(k, k - skip);
  for (int c = skip; c < k; ++c) {
    frame.col(c - skip) = -2.0 * (w[c] / ww) * w;
    frame(c, c - skip) += 1.0;
  }
  return frame;
}

}  // namespace

Mat householder_frame(const Vec& p) {
  require_unit(p, 1e-9, "householder_frame");
  return householder_complement(p, 1);
}

Mat frame_orthogonal_to(const Vec& p, const Vec& q) {
  const int k = static_cast<int>(p.size());
  require_unit(p, 1e-9, "frame_orthogonal_to(p)");
  require_unit(q, 1e-9, "frame_orthogonal_to(q)");
  if (std::abs(p.dot(q)) > 1e-8) {
    throw std::invalid_argument("frame_orthogonal_to: p and q are not orthogonal");
  }
  // First reflection sends p to a multiple of e_1; q lands in e_1^perp.
  const double sigma = p[0] >= 0.0 ? 1.0 : -1.0;
  Vec w = p;
  w[0] += sigma;
  const double ww = w.squaredNorm();
  Vec qr = q - (2.0 * w.dot(q) / ww) * w;  // first component ~ 0
  // Second reflection within coordinates 2..k sends qr to a multiple of e_2.
  Vec qsub = qr.tail(k - 1);
  Mat sub = householder_complement(qsub / qsub.norm(), 1);  // (k-1) x (k-2)
  Mat frame(k, k - 2);
  for (int c = 0; c < k - 2; ++c) {
    Vec col(k);
    col[0] = 0.0;
    col.tail(k - 1) = sub.col(c);
    frame.col(c) = col - (2.0 * w.dot(col) / ww) * w;  // undo first reflection
  }
  return frame;
}

double pfaffian(Mat m) {
  const int n = static_cast<int>(m.rows());
  if (n != m.cols()) throw std::invalid_argument("pfaffian: matrix not square");
  if (n % 2 != 0) return 0.0;
  if (n == 0) return 1.0;
  double pf = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // Pivot: largest entry in column k below the diagonal.
    int kp = k + 1;
    double best = std::abs(m(k + 1, k));
    for (int i = k + 2; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        kp = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (kp != k + 1) {
      m.row(k + 1).swap(m.row(kp));
      m.col(k + 1).swap(m.col(kp));
      pf = -pf;
    }
    pf *= m(k, k + 1);
    const int rest = n - (k + 2);
    if (rest > 0) {
      // Congruence update eliminating column k below row k+1.
      Vec tau = m.block(k + 2, k, rest, 1) / m(k + 1, k);
      Vec col = m.block(k + 2, k + 1, rest, 1);
      m.block(k + 2, k + 2, rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

}  // namespace contactgeo
