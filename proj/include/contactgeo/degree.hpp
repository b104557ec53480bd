#ifndef CONTACTGEO_DEGREE_HPP
#define CONTACTGEO_DEGREE_HPP

#include <vector>

#include "contactgeo/contact_forms.hpp"
#include "contactgeo/quaternion_algebra.hpp"
#include "contactgeo/sphere_family.hpp"

namespace contactgeo {

/// A hyperplane coorientation v together with a complex structure on
/// v^perp, the latter expressed in the deterministic Householder frame
/// of v^perp.
struct AlmostContactPoint {
  Vec v;
  Mat j;
};

/// Extension to a complex structure on one dimension more: j on v^perp and
/// the rotation block v -> e_t -> -v on the remaining plane.
ComplexStructure h_extend(const AlmostContactPoint& a);

/// P = cos(phi/2) I + sin(phi/2) J_theta and Itilde = P^t I P, together
/// with the closed forms they must satisfy; violations throw.
struct ConjugationPath {
  Mat p;
  ComplexStructure itilde;
};

ConjugationPath conjugation_path(const QuaternionicTriple& t, double theta, double phi);

/// Winding degree of the sphere of structures of a quaternionic triple,
/// via the loop P_{theta,pi} J^{-1} = cos(theta) id + sin(theta) I in the
/// I-unitary group. Returns 2m.
int sphere_degree(const QuaternionicTriple& t, int resolution);

/// Quaternionic frame at a point q: an orthonormal basis of the
/// (I,J,K)-invariant distribution eta, extended by the three Reeb fields.
struct QuaternionicFrame {
  SpherePoint base;
  Mat eta;        // d x (d-4)
  Mat tau_tilde;  // d x (d-1): [eta | R_I | R_J | R_K]
};

QuaternionicFrame quaternionic_frame(const QuaternionicTriple& t, const SpherePoint& q);

/// Complex structures over a closed (theta, phi) grid.
struct StructureSphere {
  std::vector<double> thetas;  // [0, 2 pi], closed
  std::vector<double> phis;    // [0, pi]
  std::vector<std::vector<Mat>> grid;  // grid[i][j] at (thetas[i], phis[j])
};

/// Evaluates the linear contact sphere at the frame's base point: expresses
/// each (ker alpha_e, structure) pair in tau-tilde coordinates and extends
/// by h. The result is a sphere of complex structures on R^{4n+4}.
StructureSphere evaluate_sphere_at_point(const LinearContactSphere& s,
                                         const QuaternionicFrame& frame, int gridTheta,
                                         int gridPhi);

struct SphereDegreeResult {
  int degree = 0;
  double linearity_residual = 0.0;  // distance of the grid to the linear model
  double relation_residual = 0.0;   // quaternion relations of the recovered triple
};

/// Degree of a structure sphere: recovers the generating triple from the
/// poles and the equator, verifies the grid is the linear sphere of that
/// triple, and winds the associated unitary loop.
SphereDegreeResult structure_sphere_degree(const StructureSphere& sphere, int resolution);

/// The composite map: complex tangencies of j, evaluation at the frame's
/// base point, h-extension back to a complex structure. Returns c(j),
/// which should reproduce j at the standard configuration.
ComplexStructure roundtrip_identity(const ComplexStructure& j, const QuaternionicFrame& frame);

}  // namespace contactgeo

#endif  // CONTACTGEO_DEGREE_HPP
