#include "contactgeo/quaternion_algebra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace contactgeo {

namespace {

void check_structure(const Mat& m, double tol, const char* what) {
  const int d = static_cast<int>(m.rows());
  if (d == 0 || m.cols() != d) throw std::invalid_argument(std::string(what) + ": not square");
  if (d % 2 != 0) throw std::invalid_argument(std::string(what) + ": odd dimension");
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  const Mat id = Mat::Identity(d, d);
  const double sq = max_abs(Mat(m * m + id));
  const double orth = max_abs(Mat(m.transpose() * m - id));
  const double anti = max_abs(Mat(m.transpose() + m));
  if (sq > tol || orth > tol || anti > tol) {
    std::ostringstream msg;
    msg << what << ": invariants violated, |M^2+id|=" << sq << " |M^tM-id|=" << orth
        << " |M^t+M|=" << anti;
    throw std::invalid_argument(msg.str());
  }
}

Mat base_i() {
  Mat m = Mat::Zero(4, 4);
  m(0, 1) = -1; m(1, 0) = 1;
  m(2, 3) = -1; m(3, 2) = 1;
  return m;
}

Mat base_j() {
  Mat m = Mat::Zero(4, 4);
  m(0, 2) = -1; m(2, 0) = 1;
  m(1, 3) = 1;  m(3, 1) = -1;
  return m;
}

Mat block_diag(const Mat& block, int copies) {
  const int b = static_cast<int>(block.rows());
  Mat m = Mat::Zero(b * copies, b * copies);
  for (int c = 0; c < copies; ++c) m.block(b * c, b * c, b, b) = block;
  return m;
}

}  // namespace

ComplexStructure::ComplexStructure(Mat m, double tol) : m_(std::move(m)) {
  check_structure(m_, tol, "ComplexStructure");
}

SphereDirection::SphereDirection(double a, double b, double c, double tol) : e0(a), e1(b), e2(c) {
  const double n2 = a * a + b * b + c * c;
  if (std::abs(n2 - 1.0) > tol) {
    throw std::invalid_argument("SphereDirection: |e|^2 = " + std::to_string(n2));
  }
}

SphereDirection SphereDirection::from_angles(double theta, double phi) {
  SphereDirection e;
  e.e0 = std::cos(theta) * std::sin(phi);
  e.e1 = std::sin(theta) * std::sin(phi);
  e.e2 = std::cos(phi);
  return e;
}

QuaternionicTriple build_quaternionic_triple(int m) {
  if (m < 1) throw std::invalid_argument("build_quaternionic_triple: m must be positive");
  const Mat i = base_i();
  const Mat j = base_j();
  const Mat k = i * j;
  return QuaternionicTriple{m, ComplexStructure(block_diag(i, m)),
                            ComplexStructure(block_diag(j, m)), ComplexStructure(block_diag(k, m))};
}

ComplexStructure combine(const QuaternionicTriple& T, const SphereDirection& e) {
  return ComplexStructure(e.e0 * T.I.matrix() + e.e1 * T.J.matrix() + e.e2 * T.K.matrix());
}

double structure_scale(const Mat& F, double tol) {
  const int d = static_cast<int>(F.rows());
  if (d == 0 || F.cols() != d) throw std::invalid_argument("structure_scale: not square");
  const Mat sq = F * F;
  const double c2 = -sq.trace() / d;
  if (c2 < -tol) throw std::invalid_argument("structure_scale: F^2 has positive trace");
  const double dev = max_abs(Mat(sq + c2 * Mat::Identity(d, d)));
  if (dev > tol * std::max(1.0, c2)) {
    throw std::invalid_argument("structure_scale: F^2 is not a multiple of -id, deviation = " +
                                std::to_string(dev));
  }
  return std::sqrt(std::max(c2, 0.0));
}

Mat exp_scaled_structure(const Mat& F, double t) {
  const int d = static_cast<int>(F.rows());
  const double c = structure_scale(F);
  const Mat id = Mat::Identity(d, d);
  if (c < 1e-14) return id + t * F;  // F^2 ~ 0 forces F ~ 0 for antisymmetric F
  return std::cos(c * t) * id + (std::sin(c * t) / c) * F;
}

ComplexBasis complex_basis(const ComplexStructure& I) {
  const int d = I.dim();
  const int h = d / 2;
  ComplexBasis basis;
  basis.b = Mat(d, h);
  basis.ib = Mat(d, h);
  int found = 0;
  for (int cand = 0; cand < d && found < h; ++cand) {
    Vec r = Vec::Zero(d);
    r[cand] = 1.0;
    for (int l = 0; l < found; ++l) {
      r -= basis.b.col(l).dot(r) * basis.b.col(l);
      r -= basis.ib.col(l).dot(r) * basis.ib.col(l);
    }
    const double n = r.norm();
    if (n < 1e-8) continue;
    basis.b.col(found) = r / n;
    basis.ib.col(found) = I.matrix() * basis.b.col(found);
    ++found;
  }
  if (found < h) throw std::runtime_error("complex_basis: failed to complete a basis");
  return basis;
}

CMat complexify(const Mat& A, const ComplexStructure& I) {
  return complexify(A, complex_basis(I), I);
}

CMat complexify(const Mat& A, const ComplexBasis& basis, const ComplexStructure& I) {
  const Mat comm = A * I.matrix() - I.matrix() * A;
  const double cnorm = max_abs(comm);
  if (cnorm > 1e-9 * std::max(1.0, max_abs(A))) {
    throw std::invalid_argument("complexify: [A, I] != 0, commutator max-abs = " +
                                std::to_string(cnorm));
  }
  const int h = static_cast<int>(basis.b.cols());
  CMat M(h, h);
  const Mat re = basis.b.transpose() * A * basis.b;
  const Mat im = basis.ib.transpose() * A * basis.b;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < h; ++c) M(r, c) = std::complex<double>(re(r, c), im(r, c));
  return M;
}

Mat realify(const CMat& M, const ComplexBasis& basis) {
  const int h = static_cast<int>(basis.b.cols());
  const int d = static_cast<int>(basis.b.rows());
  Mat A = Mat::Zero(d, d);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < h; ++c) {
      const double x = M(r, c).real();
      const double y = M(r, c).imag();
      A += x * (basis.b.col(r) * basis.b.col(c).transpose() +
                basis.ib.col(r) * basis.ib.col(c).transpose());
      A += y * (basis.ib.col(r) * basis.b.col(c).transpose() -
                basis.b.col(r) * basis.ib.col(c).transpose());
    }
  }
  return A;
}

int det_winding(const std::vector<Mat>& loop, const ComplexStructure& I) {
  if (loop.size() < 3) throw std::invalid_argument("det_winding: need at least 3 samples");
  const double closure = max_abs(Mat(loop.front() - loop.back()));
  if (closure > 1e-8 * std::max(1.0, max_abs(loop.front()))) {
    throw std::invalid_argument("det_winding: loop does not close, gap = " +
                                std::to_string(closure));
  }
  const ComplexBasis basis = complex_basis(I);
  double total = 0.0;
  std::complex<double> prev;
  for (std::size_t s = 0; s < loop.size(); ++s) {
    const CMat M = complexify(loop[s], basis, I);
    const std::complex<double> det = M.determinant();
    if (std::abs(det) < 1e-12) {
      throw std::invalid_argument("det_winding: sample " + std::to_string(s) +
                                  " is not invertible");
    }
    if (s > 0) {
      const double step = std::arg(det / prev);
      if (std::abs(step) > std::numbers::pi / 2) {
        throw std::invalid_argument("det_winding: argument jump " + std::to_string(step) +
                                    " at sample " + std::to_string(s) +
                                    "; loop resolution too coarse");
      }
      total += step;
    }
    prev = det;
  }
  const double winding = total / (2.0 * std::numbers::pi);
  const long rounded = std::lround(winding);
  if (std::abs(winding - static_cast<double>(rounded)) > 1e-6) {
    throw std::runtime_error("det_winding: accumulated argument " + std::to_string(winding) +
                             " is not an integer multiple of 2 pi");
  }
  return static_cast<int>(rounded);
}

}  // namespace contactgeo
