#ifndef CONTACTGEO_LINALG_HPP
#define CONTACTGEO_LINALG_HPP

#include <Eigen/Dense>

#include <string>

namespace contactgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Throws std::invalid_argument unless |v| = 1 within tol.
void require_unit(const Vec& v, double tol, const std::string& what);

/// Deterministic orthonormal basis of p^perp for a unit vector p in R^k.
/// Columns of the returned k x (k-1) matrix are the Householder images of
/// the standard basis vectors e_2..e_k; for p = +-e_1 this is exactly
/// {e_2,...,e_k}. Tie-breaking sign: reflection vector p + sign(p_1) e_1
/// with sign(0) = +1.
Mat householder_frame(const Vec& p);

/// Deterministic orthonormal basis of {p, q}^perp for orthonormal p, q,
/// as the k x (k-2) matrix of a two-step Householder construction.
Mat frame_orthogonal_to(const Vec& p, const Vec& q);

/// Pfaffian of a skew-symmetric matrix by tridiagonalizing congruence
/// transforms with partial pivoting. Takes its argument by value (the
/// elimination is destructive). Returns 0 for odd dimension.
double pfaffian(Mat m);

}  // namespace contactgeo

#endif  // CONTACTGEO_LINALG_HPP
