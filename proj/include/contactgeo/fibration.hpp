#ifndef CONTACTGEO_FIBRATION_HPP
#define CONTACTGEO_FIBRATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "contactgeo/contact_forms.hpp"

namespace contactgeo {

/// Scalar coefficient of a total-space form, as a function of the fiber
/// point and the polar base coordinates (r, theta).
struct ScalarProfile {
  std::function<double(const Vec&, double, double)> value;
  std::function<Vec(const Vec&, double, double)> gradient_p;  // may be empty

  bool zero() const { return !value; }
};

/// Named Hamiltonian profiles for command-line use. Known names:
/// "zero", "coord1" (r^2 p_1), "sin-coord2" (r^2 sin(theta) p_2),
/// "mixed" (r^2 (p_1 p_2 + cos(theta) p_3)).
ScalarProfile named_profile(const std::string& name);

/// Contact fibration over the disk with total-space form
///   alpha = p^t A(r,theta) dp + H_theta dtheta + H_r dr,
/// fibers the unit sphere in R^d. The trivialized shape has a constant
/// generator A_0 and H_r = 0.
class DiskFibration {
 public:
  static DiskFibration trivialized(ContactFormSpec fiberForm, ScalarProfile h,
                                   double quadraticBound = 100.0);
  static DiskFibration varying(int fiberDim, std::function<Mat(double, double)> generator,
                               std::function<std::pair<Mat, Mat>(double, double)> generatorDerivs,
                               ScalarProfile thetaCoef, ScalarProfile radialCoef);

  int fiber_dim() const { return dim_; }
  bool is_trivialized() const { return trivialized_; }
  Mat generator(double r, double theta) const;
  /// (d/dr A, d/dtheta A); finite differences unless supplied analytically.
  std::pair<Mat, Mat> generator_derivatives(double r, double theta) const;
  double theta_coef(const Vec& p, double r, double theta) const;
  double radial_coef(const Vec& p, double r, double theta) const;
  Vec theta_coef_gradient(const Vec& p, double r, double theta) const;
  Vec radial_coef_gradient(const Vec& p, double r, double theta) const;

 private:
  DiskFibration() = default;
  int dim_ = 0;
  bool trivialized_ = false;
  Mat constant_generator_;
  std::function<Mat(double, double)> generator_;
  std::function<std::pair<Mat, Mat>(double, double)> generator_derivs_;
  ScalarProfile theta_coef_;
  ScalarProfile radial_coef_;
};

/// Horizontal lift of the base vector u at the point (p, (r, theta)):
/// the unique total-space vector over u annihilated by alpha and
/// d alpha-orthogonal to the vertical part of the contact structure.
struct Lift {
  Vec fiber;
  Vec2 base;
  double alpha_residual;
  double dalpha_residual;
};

Lift horizontal_lift(const DiskFibration& fib, const SpherePoint& p, double r, double theta,
                     const Vec2& u);

/// Path in the base disk, parameterized over t in [0, 1]. Interior points
/// where the velocity jumps are listed as breakpoints; the integrator
/// splits there.
struct BasePath {
  std::function<Vec2(double)> position;
  std::function<Vec2(double)> velocity;  // may be empty; finite differences otherwise
  std::vector<double> breakpoints;

  Vec2 velocity_at(double t) const;
  static BasePath circle(double r0);
  static BasePath segment(const Vec2& from, const Vec2& to);
  static BasePath concatenation(const BasePath& first, const BasePath& second);
};

struct TransportResult {
  std::vector<std::pair<Vec, Vec>> endpoints;
  double max_horizontality_residual = 0.0;
  int steps = 0;
};

TransportResult parallel_transport(const DiskFibration& fib, const BasePath& path,
                                   const std::vector<Vec>& points, double step);
TransportResult parallel_transport(const DiskFibration& fib, const BasePath& path, const Vec& p0,
                                   double step);

/// Compares the holonomy of the circle of radius r0 with the Hamiltonian
/// flow of G_theta = -H(., r0, theta); the two sides are discretized
/// independently (the Hamiltonian side integrates at half the step).
struct LemmaParallelResult {
  double max_endpoint_distance = 0.0;
  double max_horizontality_residual = 0.0;
  int samples = 0;
};

LemmaParallelResult check_lemma_parallel(const DiskFibration& fib, double r0, int samples,
                                         std::uint64_t seed, double step);

/// Radial trivialization: transports probe points from the center fiber
/// along fixed-angle rays and reads off the d theta coefficient and the
/// conformal factor of the pulled-back form.
struct TrivializationTable {
  std::vector<double> r_values;
  std::vector<double> theta_values;
  std::vector<Mat> hamiltonian;  // one (gridR x gridTheta) table per probe
  std::vector<Mat> conformal;
  double max_lift_residual = 0.0;
};

TrivializationTable radial_trivialization(const DiskFibration& fib, const std::vector<Vec>& probes,
                                          int gridR, int gridTheta, double step, double rMax);

/// Hamiltonians of the holonomy loops for radii approaching the boundary,
/// with a second-order Richardson extrapolation of the limit loop.
struct LoopAtInfinityResult {
  std::vector<double> r_values;
  std::vector<Mat> samples;  // per radius: (probes x gridTheta) values of G
  Mat limit;                 // probes x gridTheta
  double max_cauchy_residual = 0.0;
  double convergence_order = 0.0;
};

LoopAtInfinityResult loop_at_infinity(const DiskFibration& fib, const std::vector<double>& rSeq,
                                      const std::vector<Vec>& probes, int gridTheta, double step,
                                      double rLimit = 1.0);

}  // namespace contactgeo

#endif  // CONTACTGEO_FIBRATION_HPP
