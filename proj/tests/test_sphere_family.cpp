#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contactgeo/rng.hpp"
#include "contactgeo/sphere_family.hpp"

using namespace contactgeo;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("polar lift generator and its special angles") {
  const LinearContactSphere s = LinearContactSphere::standard(0);
  // F_theta squares to -id/4.
  for (const double theta : {0.0, 0.7, kPi / 2, 2.0}) {
    const Mat f = polar_lift(s, theta).f;
    CHECK(max_abs(Mat(f * f + 0.25 * Mat::Identity(4, 4))) < 1e-15);
  }
  CheckRng rng(81, "polar-lift", 0);
  const SpherePoint p(rng.unit_vector(4));
  // theta = 0: fiber part (1/2) J p; theta = pi/2: -(1/2) I p.
  CHECK(max_abs(Vec(lifted_polar_field(s, 0.0, 0.3, p).fiber -
                    0.5 * s.triple.J.matrix() * p.coords())) < 1e-15);
  CHECK(max_abs(Vec(lifted_polar_field(s, kPi / 2, 0.3, p).fiber +
                    0.5 * s.triple.I.matrix() * p.coords())) < 1e-15);
}

TEST_CASE("closed-form lift is horizontal for the product fibration") {
  const LinearContactSphere s = LinearContactSphere::standard(1);
  const DiskFibration fib = polar_disk_fibration(s);
  double worst = 0.0;
  for (int k = 0; k < 25; ++k) {
    CheckRng rng(83, "lift-vs-solve", k);
    const SpherePoint p(rng.unit_vector(8));
    const double theta = rng.uniform(0.0, 2 * kPi);
    const double phi = rng.uniform(1e-3, kPi - 1e-3);
    const Lift numeric = horizontal_lift(fib, p, phi, theta, Vec2(1.0, 0.0));
    const TotalVector closed = lifted_polar_field(s, theta, phi, p);
    worst = std::max(worst, max_abs(Vec(numeric.fiber - closed.fiber)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("transport flow: identity, antipode, and the ODE oracle") {
  const LinearContactSphere s = LinearContactSphere::standard(0);
  CheckRng rng(85, "transport-flow", 0);
  const SpherePoint p(rng.unit_vector(4));
  CHECK(max_abs(Vec(transport_flow(s, 1.2, 0.0, p).coords() - p.coords())) < 1e-15);
  CHECK(max_abs(Vec(transport_flow(s, 1.2, 2.0 * kPi, p).coords() + p.coords())) < 1e-12);

  // RK4 integration of the lifted field reproduces the closed-form flow.
  const double theta = 0.9, phi = 2.1;
  Vec q = p.coords();
  const int steps = 2100;
  const double h = phi / steps;
  const Mat f = polar_lift(s, theta).f;
  for (int i = 0; i < steps; ++i) {
    const Vec k1 = f * q;
    const Vec k2 = f * (q + 0.5 * h * k1);
    const Vec k3 = f * (q + 0.5 * h * k2);
    const Vec k4 = f * (q + h * k3);
    q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    q /= q.norm();
  }
  CHECK((transport_flow(s, theta, phi, p).coords() - q).norm() < 1e-7);
}

TEST_CASE("pullback Hamiltonian equals sin^2(phi/2)") {
  const LinearContactSphere s = LinearContactSphere::standard(1);
  for (int k = 0; k < 40; ++k) {
    CheckRng rng(87, "pullback", k);
    const SpherePoint p(rng.unit_vector(8));
    const double theta = rng.uniform(0.0, 2 * kPi);
    CHECK(std::abs(pullback_hamiltonian(s, theta, 0.0, p)) < 1e-12);
    CHECK(pullback_hamiltonian(s, theta, kPi, p) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(pullback_hamiltonian(s, theta, kPi / 2, p) == doctest::Approx(0.5).epsilon(1e-10));
    const double phi = rng.uniform(0.0, kPi);
    CHECK(std::abs(pullback_hamiltonian(s, theta, phi, p) -
                   std::sin(phi / 2) * std::sin(phi / 2)) < 1e-9);
  }
}

TEST_CASE("pullback through the integrated flow matches the formula") {
  const LinearContactSphere s = LinearContactSphere::standard(0);
  for (int k = 0; k < 5; ++k) {
    CheckRng rng(89, "pullback-ode", k);
    const SpherePoint p(rng.unit_vector(4));
    const double theta = rng.uniform(0.0, 2 * kPi);
    const double phi = rng.uniform(0.2, kPi - 0.2);
    CHECK(std::abs(pullback_hamiltonian_ode(s, theta, phi, p, 1e-3) -
                   std::sin(phi / 2) * std::sin(phi / 2)) < 1e-6);
  }
}

TEST_CASE("the loop at infinity is a K-rotation with a definite sign") {
  const LinearContactSphere s = LinearContactSphere::standard(1);
  const ReebIdentification res = reeb_identification(s, 5, 91, 2e-3);
  CHECK(res.sign == 1);  // flow of G = -1 matches exp(+K t) in this convention
  CHECK(res.matched_distance < 1e-7);
  CHECK(res.rejected_distance > 0.5);
  CHECK(res.commutation_residual < 1e-7);
}
