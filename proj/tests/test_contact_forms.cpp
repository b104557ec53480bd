#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contactgeo/contact_forms.hpp"
#include "contactgeo/rng.hpp"
#include "oracles.hpp"

using namespace contactgeo;

namespace {

SpherePoint random_point(std::uint64_t seed, const char* name, int index, int dim) {
  CheckRng rng(seed, name, index);
  return SpherePoint(rng.unit_vector(dim));
}

Mat kernel_frame(const ContactFormSpec& form, const SpherePoint& p) {
  Vec q = form.generator() * p.coords();
  return frame_orthogonal_to(p.coords(), Vec(q / q.norm()));
}

}  // namespace

TEST_CASE("evaluate_form basics") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  for (int s = 0; s < 20; ++s) {
    const SpherePoint p = random_point(21, "evaluate", s, 4);
    CHECK(std::abs(evaluate_form(alpha, p, p.coords())) < 1e-15);
    CHECK(evaluate_form(alpha, p, Vec(-t.I.matrix() * p.coords())) ==
          doctest::Approx(1.0).epsilon(1e-14));
    const Mat xi = kernel_frame(alpha, p);
    for (int c = 0; c < xi.cols(); ++c) {
      CHECK(std::abs(evaluate_form(alpha, p, Vec(xi.col(c)))) < 1e-12);
    }
  }
}

TEST_CASE("two_form agrees with the finite-difference exterior derivative") {
  for (int s = 0; s < 1000; ++s) {
    CheckRng rng(23, "two-form-oracle", s);
    const int d = (s % 2 == 0) ? 4 : 6;
    Mat raw(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) raw(r, c) = rng.normal();
    const ContactFormSpec form(Mat(raw - raw.transpose()));
    const SpherePoint p = SpherePoint(rng.unit_vector(d));
    const Mat frame = householder_frame(p.coords());
    Vec u = Vec::Zero(d), v = Vec::Zero(d);
    for (int c = 0; c < frame.cols(); ++c) {
      u += rng.normal() * frame.col(c);
      v += rng.normal() * frame.col(c);
    }
    const double closed = two_form(form, p, u, v);
    const double fd = oracles::exterior_derivative_fd(form.generator(), p.coords(), u, v);
    CHECK(std::abs(closed - fd) < 1e-6 * std::max(1.0, std::abs(closed)));
    CHECK(std::abs(two_form(form, p, u, u)) < 1e-13 * std::max(1.0, u.squaredNorm()));
    CHECK(two_form(form, p, u, v) == doctest::Approx(-two_form(form, p, v, u)).epsilon(1e-14));
  }
}

TEST_CASE("two_form on a complex pair gives minus two") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  for (int s = 0; s < 20; ++s) {
    const SpherePoint p = random_point(25, "two-form-pair", s, 4);
    const Mat xi = kernel_frame(alpha, p);
    const Vec u = xi.col(0);
    const Vec v = t.I.matrix() * u;  // tangent because u is in the kernel
    CHECK(two_form(alpha, p, u, v) == doctest::Approx(-2.0).epsilon(1e-13));
  }
}

TEST_CASE("two_form rejects non-tangent input") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  const SpherePoint p = random_point(27, "two-form-reject", 0, 4);
  CHECK_THROWS_AS(static_cast<void>(two_form(alpha, p, p.coords(), p.coords())),
                  std::invalid_argument);
}

TEST_CASE("tangent frames") {
  Vec e1 = Vec::Zero(6);
  e1[0] = 1.0;
  const TangentFrame at_pole = build_tangent_frame(SpherePoint(e1));
  for (int c = 0; c < 5; ++c) {
    Vec expected = Vec::Zero(6);
    expected[c + 1] = 1.0;
    CHECK(max_abs(Vec(at_pole.vectors.col(c) - expected)) == 0.0);
  }
  for (int s = 0; s < 30; ++s) {
    const SpherePoint p = random_point(29, "tangent-frame", s, 8);
    const TangentFrame f = build_tangent_frame(p);
    CHECK(max_abs(Mat(f.vectors.transpose() * f.vectors - Mat::Identity(7, 7))) < 1e-13);
    CHECK(max_abs(Vec(f.vectors.transpose() * p.coords())) < 1e-13);
  }
}

TEST_CASE("Reeb field matches the closed form -J p") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  for (int s = 0; s < 50; ++s) {
    const SpherePoint p = random_point(31, "reeb-s3", s, 4);
    const Vec r = reeb_field(alpha, p);
    CHECK(max_abs(Vec(r + t.I.matrix() * p.coords())) < 1e-10);
    CHECK(reeb_residual(alpha, p, r) < 1e-10);
    CHECK(evaluate_form(alpha, p, r) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Reeb field of combined forms") {
  const QuaternionicTriple t = build_quaternionic_triple(2);
  for (int s = 0; s < 50; ++s) {
    CheckRng rng(33, "reeb-combined", s);
    const Vec e = rng.unit_vector(3);
    const ComplexStructure je = combine(t, SphereDirection(e[0], e[1], e[2]));
    const ContactFormSpec alpha(je.matrix());
    const SpherePoint p = SpherePoint(rng.unit_vector(8));
    const Vec r = reeb_field(alpha, p);
    CHECK(max_abs(Vec(r + je.matrix() * p.coords())) < 1e-10);
    CHECK(reeb_residual(alpha, p, r) < 1e-10);
  }
}

TEST_CASE("contact nondegeneracy is the constant 2^((d-2)/2) for the round forms") {
  const QuaternionicTriple t1 = build_quaternionic_triple(1);
  const QuaternionicTriple t2 = build_quaternionic_triple(2);
  for (int s = 0; s < 25; ++s) {
    const SpherePoint p3 = random_point(35, "pf-s3", s, 4);
    CHECK(contact_nondegeneracy(ContactFormSpec(t1.I.matrix()), p3) ==
          doctest::Approx(2.0).epsilon(1e-11));
    const SpherePoint p7 = random_point(35, "pf-s7", s, 8);
    CHECK(contact_nondegeneracy(ContactFormSpec(t2.I.matrix()), p7) ==
          doctest::Approx(8.0).epsilon(1e-11));
  }
}

TEST_CASE("a degenerate generator loses the contact condition somewhere") {
  // One rotation block of i zeroed out: alpha vanishes along those coordinates.
  Mat a = Mat::Zero(4, 4);
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  const ContactFormSpec degenerate(a);
  double least = 1e300;
  for (int s = 0; s <= 32; ++s) {
    const double ang = 2.0 * std::numbers::pi * s / 32;
    Vec p(4);
    p << 0.0, 0.0, std::cos(ang), std::sin(ang);
    least = std::min(least, contact_nondegeneracy(degenerate, SpherePoint(p)));
  }
  CHECK(least < 1e-10);
  CHECK_THROWS_AS(
      static_cast<void>(contact_nondegeneracy(ContactFormSpec(Mat::Zero(4, 4)),
                                              random_point(37, "pf-zero", 0, 4))),
      std::invalid_argument);
  // Odd kernel dimension is rejected.
  Mat odd = Mat::Zero(3, 3);
  odd(0, 1) = -1.0;
  odd(1, 0) = 1.0;
  odd(1, 2) = -1.0;
  odd(2, 1) = 1.0;
  CHECK_THROWS_AS(
      static_cast<void>(contact_nondegeneracy(ContactFormSpec(odd),
                                              random_point(37, "pf-odd", 0, 3))),
      std::invalid_argument);
}

TEST_CASE("Hamiltonian vector field reduces to the Reeb field for H = 1") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  HamiltonianField one{[](const Vec&) { return 1.0; }, {}};
  HamiltonianField zero{[](const Vec&) { return 0.0; }, {}};
  for (int s = 0; s < 20; ++s) {
    const SpherePoint p = random_point(39, "ham-const", s, 4);
    CHECK(max_abs(Vec(hamiltonian_vector_field(alpha, one, p) - reeb_field(alpha, p))) < 1e-10);
    CHECK(max_abs(Vec(hamiltonian_vector_field(alpha, zero, p))) < 1e-12);
  }
}

TEST_CASE("Hamiltonian vector field satisfies its defining equations") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  HamiltonianField coord{[](const Vec& p) { return p[0]; }, {}};
  for (int s = 0; s < 20; ++s) {
    const SpherePoint p = random_point(41, "ham-coord", s, 4);
    const Vec x = hamiltonian_vector_field(alpha, coord, p);
    const Vec grad = tangential_gradient(coord, p);
    const Vec r = reeb_field(alpha, p);
    CHECK(std::abs(evaluate_form(alpha, p, x) - p.coords()[0]) < 1e-8);
    const Mat frame = householder_frame(p.coords());
    for (int b = 0; b < frame.cols(); ++b) {
      const Vec ub = frame.col(b);
      const double lhs = two_form(alpha, p, x, ub);
      const double rhs = -grad.dot(ub) + grad.dot(r) * evaluate_form(alpha, p, Vec(ub));
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("Hamiltonian vector field is linear in the Hamiltonian") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  HamiltonianField h1{[](const Vec& p) { return p[0]; }, {}};
  HamiltonianField h2{[](const Vec& p) { return p[1] * p[2]; }, {}};
  const double a = 0.7, b = -1.3;
  HamiltonianField mix{[=](const Vec& p) { return a * p[0] + b * p[1] * p[2]; }, {}};
  for (int s = 0; s < 20; ++s) {
    const SpherePoint p = random_point(43, "ham-linear", s, 4);
    const Vec lhs = hamiltonian_vector_field(alpha, mix, p);
    const Vec rhs = a * hamiltonian_vector_field(alpha, h1, p) +
                    b * hamiltonian_vector_field(alpha, h2, p);
    CHECK(max_abs(Vec(lhs - rhs)) < 1e-9);
  }
}

TEST_CASE("the flow of H = 1 is the Reeb rotation") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.K.matrix());
  TimeHamiltonian one{[](const Vec&, double) { return 1.0; }, {}};
  for (int s = 0; s < 5; ++s) {
    const SpherePoint p0 = random_point(45, "flow-reeb", s, 4);
    const double time = 0.6 + 0.2 * s;
    const SpherePoint end = hamiltonian_flow(alpha, one, p0, time, 1e-3);
    const Vec expected = exp_scaled_structure(Mat(-t.K.matrix()), time) * p0.coords();
    CHECK(max_abs(Vec(end.coords() - expected)) < 1e-8);
  }
  const SpherePoint p0 = random_point(45, "flow-reeb", 99, 4);
  CHECK(max_abs(Vec(hamiltonian_flow(alpha, one, p0, 0.0, 1e-2).coords() - p0.coords())) == 0.0);
  CHECK_THROWS_AS(static_cast<void>(hamiltonian_flow(alpha, one, p0, 1.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("flow error shrinks at fourth order in the step") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  const ContactFormSpec alpha(t.I.matrix());
  TimeHamiltonian h{[](const Vec& p, double s) { return p[0] + 0.5 * std::sin(s); }, {}};
  const SpherePoint p0 = random_point(47, "flow-order", 0, 4);
  const double time = 1.0;
  auto endpoint = [&](double step) { return hamiltonian_flow(alpha, h, p0, time, step).coords(); };
  const double err_h = (endpoint(0.05) - endpoint(0.0125)).norm();
  const double err_h2 = (endpoint(0.025) - endpoint(0.00625)).norm();
  CHECK(err_h / err_h2 > 8.0);
  CHECK(err_h / err_h2 < 40.0);
}

TEST_CASE("complex tangencies invariance of the kernel") {
  const QuaternionicTriple t = build_quaternionic_triple(2);
  CHECK(max_abs(Mat(complex_tangencies(t.I).generator() - t.I.matrix())) == 0.0);
  for (int s = 0; s < 20; ++s) {
    CheckRng rng(49, "tangencies", s);
    const Vec e = rng.unit_vector(3);
    const ComplexStructure j = combine(t, SphereDirection(e[0], e[1], e[2]));
    const ContactFormSpec form = complex_tangencies(j);
    const SpherePoint p = SpherePoint(rng.unit_vector(8));
    const Mat xi = kernel_frame(form, p);
    CHECK(xi.cols() == 6);
    // j maps the kernel frame into its own span.
    const Mat image = j.matrix() * xi;
    const Mat residual = image - xi * (xi.transpose() * image);
    CHECK(max_abs(residual) < 1e-10);
  }
}
