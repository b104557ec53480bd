#ifndef CONTACTGEO_QUATERNION_ALGEBRA_HPP
#define CONTACTGEO_QUATERNION_ALGEBRA_HPP

#include <vector>

#include "contactgeo/linalg.hpp"

namespace contactgeo {

/// An orthogonal antisymmetric matrix squaring to -identity.
class ComplexStructure {
 public:
  explicit ComplexStructure(Mat m, double tol = 1e-10);
  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  Mat m_;
};

/// Unit direction in the coefficient 2-sphere, optionally from spherical
/// angles e = (cos(theta) sin(phi), sin(theta) sin(phi), cos(phi)).
struct SphereDirection {
  double e0 = 1.0, e1 = 0.0, e2 = 0.0;

  SphereDirection() = default;
  SphereDirection(double a, double b, double c, double tol = 1e-10);
  static SphereDirection from_angles(double theta, double phi);
};

/// Three anticommuting complex structures on R^{4m} with I J = K.
struct QuaternionicTriple {
  int m;
  ComplexStructure I, J, K;
  int dim() const { return 4 * m; }
};

/// Block-diagonal direct sums of the fixed 4x4 convention: i rotates the
/// coordinate pairs (x1,x2) and (x3,x4), j swaps the pairs, k = i j.
QuaternionicTriple build_quaternionic_triple(int m);

/// e0 I + e1 J + e2 K; a complex structure for any unit e.
ComplexStructure combine(const QuaternionicTriple& T, const SphereDirection& e);

/// The scale c >= 0 with F^2 = -c^2 id. Throws if F^2 is not a
/// non-positive multiple of the identity within tol.
double structure_scale(const Mat& F, double tol = 1e-8);

/// Closed-form exponential exp(F t) = cos(c t) id + sin(c t)/c F for
/// F^2 = -c^2 id; orthogonal whenever F is antisymmetric.
Mat exp_scaled_structure(const Mat& F, double t);

/// Orthonormal real vectors (b_1, I b_1, ..., b_h, I b_h) making R^{2h} a
/// complex vector space with multiplication by i realized as I. Built
/// greedily from the standard basis, so the construction is deterministic.
struct ComplexBasis {
  Mat b;   // d x h, the complex basis vectors
  Mat ib;  // d x h, their images under I
};

ComplexBasis complex_basis(const ComplexStructure& I);

/// Matrix of A acting on the I-complex space, for A commuting with I.
/// Throws (reporting the commutator norm) otherwise.
CMat complexify(const Mat& A, const ComplexStructure& I);
CMat complexify(const Mat& A, const ComplexBasis& basis, const ComplexStructure& I);

/// Inverse of complexify: the real 2h x 2h matrix acting as M does.
Mat realify(const CMat& M, const ComplexBasis& basis);

/// Winding number of theta -> arg det_C(loop(theta)) for a closed loop of
/// invertible matrices commuting with I, by accumulated argument
/// differences. The sample sequence must contain both endpoints
/// (first ~ last); steps with |d arg| > pi/2 are rejected as aliasing.
int det_winding(const std::vector<Mat>& loop, const ComplexStructure& I);

}  // namespace contactgeo

#endif  // CONTACTGEO_QUATERNION_ALGEBRA_HPP
