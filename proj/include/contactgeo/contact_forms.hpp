#ifndef CONTACTGEO_CONTACT_FORMS_HPP
#define CONTACTGEO_CONTACT_FORMS_HPP

#include <functional>

#include "contactgeo/linalg.hpp"
#include "contactgeo/quaternion_algebra.hpp"

namespace contactgeo {

/// A point of the unit sphere S^{d-1} in R^d.
class SpherePoint {
 public:
  explicit SpherePoint(Vec coords, double tol = 1e-12);
  static SpherePoint project(Vec coords);
  const Vec& coords() const { return c_; }
  operator const Vec&() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()); }

 private:
  Vec c_;
};

/// Generator A of the 1-form alpha(v)|_p = p^t A v on the sphere.
class ContactFormSpec {
 public:
  explicit ContactFormSpec(Mat generator, double tol = 1e-10);
  const Mat& generator() const { return a_; }
  int dim() const { return static_cast<int>(a_.rows()); }

 private:
  Mat a_;
};

/// The form whose kernel cuts the complex tangencies TS cap j TS.
ContactFormSpec complex_tangencies(const ComplexStructure& j);

struct TangentFrame {
  SpherePoint base;
  Mat vectors;  // d x (d-1), orthonormal columns spanning base^perp
};

TangentFrame build_tangent_frame(const SpherePoint& p);

/// alpha(v)|_p = p^t A v.
double evaluate_form(const ContactFormSpec& form, const SpherePoint& p, const Vec& v);

/// d alpha(u, v)|_p = 2 u^t A v for tangent u, v. The constant matches the
/// finite-difference exterior derivative of alpha along surface patches
/// (see the oracle in the test suite). Non-tangent inputs are rejected.
double two_form(const ContactFormSpec& form, const SpherePoint& p, const Vec& u, const Vec& v);

/// |Pf(M)| for M the two-form on an orthonormal frame of
/// xi_p = ker alpha cap T_p S; strictly positive iff the form is contact at p.
double contact_nondegeneracy(const ContactFormSpec& form, const SpherePoint& p);

/// The unique tangent R with alpha(R) = 1 and d alpha(R, .) = 0, computed
/// by a least-squares solve on a tangent frame. Throws when the system is
/// singular (non-contact configuration).
Vec reeb_field(const ContactFormSpec& form, const SpherePoint& p);

/// Max residual of the defining equations of the Reeb field at p.
double reeb_residual(const ContactFormSpec& form, const SpherePoint& p, const Vec& r);

/// Scalar function on the sphere; gradient (ambient, optional) falls back
/// to central differences of the radially extended function.
struct HamiltonianField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // may be empty
};

/// Differential of H restricted to T_p S, as an ambient vector in p^perp.
Vec tangential_gradient(const HamiltonianField& h, const SpherePoint& p, double step = 1e-5);

/// The contact vector field X with i_X alpha = H and
/// i_X d alpha = -dH + (i_R dH) alpha, solved on a tangent frame.
Vec hamiltonian_vector_field(const ContactFormSpec& form, const HamiltonianField& h,
                             const SpherePoint& p);

struct TimeHamiltonian {
  std::function<double(const Vec&, double)> value;
  std::function<Vec(const Vec&, double)> gradient;  // may be empty

  HamiltonianField at(double t) const;
};

/// RK4 integration of the contact Hamiltonian field from time 0 to t with
/// per-step renormalization to the sphere.
SpherePoint hamiltonian_flow(const ContactFormSpec& form, const TimeHamiltonian& h,
                             const SpherePoint& p0, double t, double step);

}  // namespace contactgeo

#endif  // CONTACTGEO_CONTACT_FORMS_HPP
