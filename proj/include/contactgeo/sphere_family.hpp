#ifndef CONTACTGEO_SPHERE_FAMILY_HPP
#define CONTACTGEO_SPHERE_FAMILY_HPP

#include <cstdint>

#include "contactgeo/contact_forms.hpp"
#include "contactgeo/fibration.hpp"
#include "contactgeo/quaternion_algebra.hpp"

namespace contactgeo {

/// The 2-sphere of contact forms e0 alpha0 + e1 alpha1 + e2 alpha2 on
/// S^{4n+3}, generated by a quaternionic triple on R^{4n+4}.
struct LinearContactSphere {
  int n;  // sphere dimension parameter, ambient dimension 4n+4
  QuaternionicTriple triple;

  static LinearContactSphere standard(int n);

  int ambient_dim() const { return 4 * n + 4; }
  ComplexStructure structure_at(const SphereDirection& e) const { return combine(triple, e); }
  ContactFormSpec form_at(const SphereDirection& e) const {
    return ContactFormSpec(structure_at(e).matrix());
  }
  ContactFormSpec form0() const { return ContactFormSpec(triple.I.matrix()); }
  ContactFormSpec form1() const { return ContactFormSpec(triple.J.matrix()); }
  ContactFormSpec form2() const { return ContactFormSpec(triple.K.matrix()); }
};

/// Generator of the polar transport flow: F_theta = (cos(theta) J - sin(theta) I)/2,
/// with F_theta^2 = -id/4.
struct PolarLift {
  double theta;
  Mat f;
};

PolarLift polar_lift(const LinearContactSphere& s, double theta);

/// Total-space tangent vector of the product fibration; base coordinates
/// are ordered (theta, phi).
struct TotalVector {
  Vec fiber;
  Vec2 base;
};

/// Horizontal lift of the polar field d/dphi: the fiber part is F_theta p,
/// which in terms of the Reeb fields R_i = -(structure) p reads
/// -(-sin(theta) R_0 + cos(theta) R_1)/2.
TotalVector lifted_polar_field(const LinearContactSphere& s, double theta, double phi,
                               const SpherePoint& p);

/// Transport from the fiber at phi = 0 to the fiber at phi along the lifted
/// polar field: p -> exp(F_theta phi) p.
SpherePoint transport_flow(const LinearContactSphere& s, double theta, double phi,
                           const SpherePoint& p);

/// The d theta coefficient of the pulled-back form, via the analytic theta
/// derivative of the transport flow. Equals sin^2(phi/2) for every p, theta.
double pullback_hamiltonian(const LinearContactSphere& s, double theta, double phi,
                            const SpherePoint& p);

/// Same quantity with the transport integrated by RK4 and the theta
/// derivative taken by central differences, as an independent route.
double pullback_hamiltonian_ode(const LinearContactSphere& s, double theta, double phi,
                                const SpherePoint& p, double step, double dtheta = 1e-4);

/// The product fibration over the punctured sphere in polar coordinates
/// r = phi (distance from the south pole e = (0,0,1)), theta azimuthal.
DiskFibration polar_disk_fibration(const LinearContactSphere& s);

/// Identifies the loop at infinity with a K-generated rotation: flows
/// G = -1 for alpha_2 over theta in [0, 2 pi] and reports which sign of
/// exp(sigma K t) matches the partial flows.
struct ReebIdentification {
  int sign = 0;
  double matched_distance = 0.0;
  double rejected_distance = 0.0;
  double commutation_residual = 0.0;
};

ReebIdentification reeb_identification(const LinearContactSphere& s, int samples,
                                       std::uint64_t seed, double step, double tol = 1e-7);

}  // namespace contactgeo

#endif  // CONTACTGEO_SPHERE_FAMILY_HPP
