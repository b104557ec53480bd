#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contactgeo/fibration.hpp"
#include "contactgeo/rng.hpp"

using namespace contactgeo;

namespace {

const double kPi = std::numbers::pi;

DiskFibration trivial_s3(const std::string& profile) {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  return DiskFibration::trivialized(ContactFormSpec(t.I.matrix()), named_profile(profile));
}

}  // namespace

TEST_CASE("profiles") {
  CHECK_THROWS_AS(named_profile("nope"), std::invalid_argument);
  // A profile that is not O(r^2) is rejected at construction.
  const QuaternionicTriple t = build_quaternionic_triple(1);
  ScalarProfile linear;
  linear.value = [](const Vec&, double r, double) { return r; };
  CHECK_THROWS_AS(DiskFibration::trivialized(ContactFormSpec(t.I.matrix()), linear),
                  std::invalid_argument);
}

TEST_CASE("zero profile lifts to the trivial connection") {
  const DiskFibration fib = trivial_s3("zero");
  for (int s = 0; s < 10; ++s) {
    CheckRng rng(61, "lift-zero", s);
    const SpherePoint p(rng.unit_vector(4));
    const Lift lift = horizontal_lift(fib, p, 0.4, 1.1, Vec2(0.3, -0.8));
    CHECK(max_abs(lift.fiber) < 1e-14);
    CHECK(lift.alpha_residual < 1e-14);
    CHECK(lift.dalpha_residual < 1e-14);
  }
}

TEST_CASE("horizontal lifts satisfy their defining equations") {
  const DiskFibration fib = trivial_s3("mixed");
  for (int s = 0; s < 50; ++s) {
    CheckRng rng(63, "lift-residual", s);
    const SpherePoint p(rng.unit_vector(4));
    const Vec2 u(rng.normal(), rng.normal());
    const Lift lift = horizontal_lift(fib, p, rng.uniform(0.1, 0.9), rng.uniform(0.0, 2 * kPi), u);
    CHECK(lift.alpha_residual < 1e-10);
    CHECK(lift.dalpha_residual < 1e-10);
    CHECK(std::abs(p.coords().dot(lift.fiber)) < 1e-12);  // tangent
  }
}

TEST_CASE("transport along a constant path is the identity") {
  const DiskFibration fib = trivial_s3("mixed");
  const BasePath constant = BasePath::segment(Vec2(0.5, 0.7), Vec2(0.5, 0.7));
  CheckRng rng(65, "transport-const", 0);
  const Vec p = rng.unit_vector(4);
  const TransportResult res = parallel_transport(fib, constant, p, 1e-2);
  CHECK((res.endpoints[0].second - p).norm() < 1e-12);
}

TEST_CASE("holonomy equals the Hamiltonian flow of minus the profile") {
  for (const auto& [profile, r0] : {std::pair<const char*, double>{"coord1", 0.5},
                                    {"sin-coord2", 0.3}, {"mixed", 0.4}}) {
    const DiskFibration fib = trivial_s3(profile);
    const LemmaParallelResult res = check_lemma_parallel(fib, r0, 3, 67, 1e-3);
    CHECK(res.max_endpoint_distance < 1e-5);
    CHECK(res.max_horizontality_residual < 1e-8);
  }
}

TEST_CASE("holonomy of the zero profile is the identity") {
  const DiskFibration fib = trivial_s3("zero");
  const LemmaParallelResult res = check_lemma_parallel(fib, 0.5, 3, 69, 1e-2);
  CHECK(res.max_endpoint_distance < 1e-12);
  CHECK(check_lemma_parallel(fib, 0.0, 3, 69, 1e-2).max_endpoint_distance == 0.0);
  CHECK_THROWS_AS(check_lemma_parallel(fib, 1.5, 3, 69, 1e-2), std::invalid_argument);
}

TEST_CASE("lemma-parallel distance refines at fourth order") {
  const DiskFibration fib = trivial_s3("mixed");
  const double coarse = check_lemma_parallel(fib, 0.5, 2, 71, 0.02).max_endpoint_distance;
  const double fine = check_lemma_parallel(fib, 0.5, 2, 71, 0.01).max_endpoint_distance;
  REQUIRE(fine > 0.0);
  CHECK(coarse / fine > 6.0);
  CHECK(coarse / fine < 64.0);
}

TEST_CASE("radial trivialization recovers a point-independent profile") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  ScalarProfile h;
  h.value = [](const Vec&, double r, double theta) { return r * r * (0.4 + 0.3 * std::sin(theta)); };
  h.gradient_p = [](const Vec& p, double, double) -> Vec { return Vec::Zero(p.size()); };
  const DiskFibration fib = DiskFibration::trivialized(ContactFormSpec(t.I.matrix()), h);
  CheckRng rng(73, "triv-probe", 0);
  const std::vector<Vec> probes = {rng.unit_vector(4)};
  const TrivializationTable table = radial_trivialization(fib, probes, 3, 6, 2e-3, 0.9);
  double worst = 0.0;
  for (std::size_t i = 0; i < table.r_values.size(); ++i) {
    for (std::size_t j = 0; j < table.theta_values.size(); ++j) {
      const double expected =
          table.r_values[i] * table.r_values[i] * (0.4 + 0.3 * std::sin(table.theta_values[j]));
      worst = std::max(worst, std::abs(table.hamiltonian[0](i, j) - expected));
      worst = std::max(worst, std::abs(table.conformal[0](i, j)));
    }
  }
  CHECK(worst < 1e-6);
  CHECK_THROWS_AS(radial_trivialization(fib, probes, 0, 6, 1e-2, 0.9), std::invalid_argument);
}

TEST_CASE("loop at infinity of the trivial fibration vanishes") {
  const DiskFibration fib = trivial_s3("zero");
  CheckRng rng(75, "loop-trivial", 0);
  const std::vector<Vec> probes = {rng.unit_vector(4)};
  const LoopAtInfinityResult res = loop_at_infinity(fib, {0.5, 0.7, 0.9}, probes, 6, 1e-2);
  CHECK(max_abs(res.limit) < 1e-12);
  for (const Mat& g : res.samples) CHECK(max_abs(g) < 1e-12);
}

TEST_CASE("loop at infinity converges at second order for an even profile") {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  ScalarProfile h;
  h.value = [](const Vec&, double r, double theta) {
    const double s = std::sin(kPi * r / 2.0);
    return (0.2 + 0.1 * std::cos(theta)) * s * s;
  };
  const DiskFibration fib = DiskFibration::trivialized(ContactFormSpec(t.I.matrix()), h);
  CheckRng rng(77, "loop-even", 0);
  const std::vector<Vec> probes = {rng.unit_vector(4)};
  const LoopAtInfinityResult res =
      loop_at_infinity(fib, {0.8, 0.9, 0.95, 0.99}, probes, 8, 1e-2);
  double worst = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double theta = 2.0 * kPi * j / 8;
    worst = std::max(worst, std::abs(res.limit(0, j) + 0.2 + 0.1 * std::cos(theta)));
  }
  CHECK(worst < 1e-5);
  CHECK(res.convergence_order == doctest::Approx(2.0).epsilon(0.25));
  CHECK_THROWS_AS(loop_at_infinity(fib, {0.9, 0.5}, probes, 8, 1e-2), std::invalid_argument);
}

TEST_CASE("path concatenation matches composed transports") {
  const DiskFibration fib = trivial_s3("mixed");
  const BasePath leg1 = BasePath::segment(Vec2(0.1, 0.2), Vec2(0.6, 1.0));
  const BasePath leg2 = BasePath::segment(Vec2(0.6, 1.0), Vec2(0.4, 2.2));
  const BasePath joined = BasePath::concatenation(leg1, leg2);
  CheckRng rng(79, "concat", 0);
  const Vec p = rng.unit_vector(4);
  const Vec mid = parallel_transport(fib, leg1, p, 1e-3).endpoints[0].second;
  const Vec two = parallel_transport(fib, leg2, mid, 1e-3).endpoints[0].second;
  const Vec one = parallel_transport(fib, joined, p, 1e-3).endpoints[0].second;
  CHECK((one - two).norm() < 2e-8);
}
