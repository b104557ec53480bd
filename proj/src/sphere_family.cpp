#include "contactgeo/sphere_family.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "contactgeo/rng.hpp"

namespace contactgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

LinearContactSphere LinearContactSphere::standard(int n) {
  if (n < 0) throw std::invalid_argument("LinearContactSphere: n must be non-negative");
  return LinearContactSphere{n, build_quaternionic_triple(n + 1)};
}

PolarLift polar_lift(const LinearContactSphere& s, double theta) {
  Mat f = 0.5 * (std::cos(theta) * s.triple.J.matrix() - std::sin(theta) * s.triple.I.matrix());
  return PolarLift{theta, std::move(f)};
}

TotalVector lifted_polar_field(const LinearContactSphere& s, double theta, double /*phi*/,
                               const SpherePoint& p) {
  TotalVector v;
  v.fiber = polar_lift(s, theta).f * p.coords();
  v.base = Vec2(0.0, 1.0);
  return v;
}

SpherePoint transport_flow(const LinearContactSphere& s, double theta, double phi,
                           const SpherePoint& p) {
  return SpherePoint::project(exp_scaled_structure(polar_lift(s, theta).f, phi) * p.coords());
}

double pullback_hamiltonian(const LinearContactSphere& s, double theta, double phi,
                            const SpherePoint& p) {
  const Mat a = s.structure_at(SphereDirection::from_angles(theta, phi)).matrix();
  const Vec transported = exp_scaled_structure(polar_lift(s, theta).f, phi) * p.coords();
  // d/dtheta exp(F_theta phi) = 2 sin(phi/2) dF/dtheta for F^2 = -id/4.
  const Mat df_dtheta =
      -0.5 * (std::cos(theta) * s.triple.I.matrix() + std::sin(theta) * s.triple.J.matrix());
  const Vec dtheta_flow = 2.0 * std::sin(phi / 2.0) * (df_dtheta * p.coords());
  return transported.dot(a * dtheta_flow);
}

double pullback_hamiltonian_ode(const LinearContactSphere& s, double theta, double phi,
                                const SpherePoint& p, double step, double dtheta) {
  if (step <= 0.0) throw std::invalid_argument("pullback_hamiltonian_ode: step must be positive");
  auto integrate = [&](double th) -> Vec {
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(phi) / step)));
    const double h = phi / n;
    Vec q = p.coords();
    const Mat f = polar_lift(s, th).f;
    for (int i = 0; i < n; ++i) {
      const Vec k1 = f * q;
      const Vec k2 = f * (q + 0.5 * h * k1);
      const Vec k3 = f * (q + 0.5 * h * k2);
      const Vec k4 = f * (q + h * k3);
      q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      q /= q.norm();
    }
    return q;
  };
  const Vec center = integrate(theta);
  const Vec plus = integrate(theta + dtheta);
  const Vec minus = integrate(theta - dtheta);
  const Mat a = s.structure_at(SphereDirection::from_angles(theta, phi)).matrix();
  return center.dot(a * ((plus - minus) / (2.0 * dtheta)));
}

DiskFibration polar_disk_fibration(const LinearContactSphere& s) {
  const QuaternionicTriple triple = s.triple;
  auto generator = [triple](double r, double theta) -> Mat {
    const double sp = std::sin(r), cp = std::cos(r);
    return std::cos(theta) * sp * triple.I.matrix() + std::sin(theta) * sp * triple.J.matrix() +
           cp * triple.K.matrix();
  };
  auto derivs = [triple](double r, double theta) -> std::pair<Mat, Mat> {
    const double sp = std::sin(r), cp = std::cos(r);
    Mat dr = std::cos(theta) * cp * triple.I.matrix() + std::sin(theta) * cp * triple.J.matrix() -
             sp * triple.K.matrix();
    Mat dth = sp * (std::cos(theta) * triple.J.matrix() - std::sin(theta) * triple.I.matrix());
    return {std::move(dr), std::move(dth)};
  };
  return DiskFibration::varying(s.ambient_dim(), generator, derivs, ScalarProfile{},
                                ScalarProfile{});
}

ReebIdentification reeb_identification(const LinearContactSphere& s, int samples,
                                       std::uint64_t seed, double step, double tol) {
  if (samples < 1) throw std::invalid_argument("reeb_identification: samples must be positive");
  const int d = s.ambient_dim();
  const ContactFormSpec alpha2 = s.form2();
  TimeHamiltonian minusOne;
  minusOne.value = [](const Vec&, double) { return -1.0; };
  minusOne.gradient = [d](const Vec&, double) -> Vec { return Vec::Zero(d); };

  const int checkpoints = 8;
  double worst_plus = 0.0, worst_minus = 0.0;
  ReebIdentification out;
  for (int sample = 0; sample < samples; ++sample) {
    CheckRng rng(seed, "reeb-identification", sample);
    const Vec p0 = rng.unit_vector(d);
    Vec flowed = p0;
    for (int c = 1; c <= checkpoints; ++c) {
      const double t0 = 2.0 * kPi * (c - 1) / checkpoints;
      const double t1 = 2.0 * kPi * c / checkpoints;
      flowed =
          hamiltonian_flow(alpha2, minusOne, SpherePoint::project(flowed), t1 - t0, step).coords();
      const Vec rot_plus = exp_scaled_structure(s.triple.K.matrix(), t1) * p0;
      const Vec rot_minus = exp_scaled_structure(Mat(-s.triple.K.matrix()), t1) * p0;
      worst_plus = std::max(worst_plus, (flowed - rot_plus).norm());
      worst_minus = std::max(worst_minus, (flowed - rot_minus).norm());
    }
  }
  // Commutation of the flow with the quarter rotation, checked on one point.
  {
    CheckRng rng(seed, "reeb-identification-commute", 0);
    const Vec p0 = rng.unit_vector(d);
    const Mat quarter = exp_scaled_structure(s.triple.K.matrix(), kPi / 2.0);
    const Vec a = hamiltonian_flow(alpha2, minusOne, SpherePoint::project(Vec(quarter * p0)), 1.0,
                                   step)
                      .coords();
    const Vec b =
        quarter * hamiltonian_flow(alpha2, minusOne, SpherePoint::project(p0), 1.0, step).coords();
    out.commutation_residual = (a - b).norm();
  }
  if (worst_plus <= tol && worst_minus > tol) {
    out.sign = 1;
    out.matched_distance = worst_plus;
    out.rejected_distance = worst_minus;
  } else if (worst_minus <= tol && worst_plus > tol) {
    out.sign = -1;
    out.matched_distance = worst_minus;
    out.rejected_distance = worst_plus;
  } else {
    throw std::runtime_error(
        "reeb_identification: no unique sign matches the flow (distances " +
        std::to_string(worst_plus) + ", " + std::to_string(worst_minus) + ")");
  }
  return out;
}

}  // namespace contactgeo
