#include <doctest.h>

#include "contactgeo/linalg.hpp"
#include "contactgeo/rng.hpp"

using namespace contactgeo;

TEST_CASE("householder frame at a standard basis vector is the remaining basis") {
  for (const double sign : {1.0, -1.0}) {
    Vec p = Vec::Zero(5);
    p[0] = sign;
    const Mat frame = householder_frame(p);
    REQUIRE(frame.cols() == 4);
    for (int c = 0; c < 4; ++c) {
      Vec expected = Vec::Zero(5);
      expected[c + 1] = 1.0;
      CHECK(max_abs(Vec(frame.col(c) - expected)) == doctest::Approx(0.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("householder frame is orthonormal and orthogonal to the base point") {
  for (int s = 0; s < 50; ++s) {
    CheckRng rng(7, "frame", s);
    const Vec p = rng.unit_vector(8);
    const Mat frame = householder_frame(p);
    const Mat gram = frame.transpose() * frame;
    CHECK(max_abs(Mat(gram - Mat::Identity(7, 7))) < 1e-13);
    CHECK(max_abs(Vec(frame.transpose() * p)) < 1e-13);
  }
}

TEST_CASE("two-vector complement frame spans {p,q}^perp") {
  for (int s = 0; s < 50; ++s) {
    CheckRng rng(7, "frame2", s);
    const Vec p = rng.unit_vector(6);
    Vec q = rng.unit_vector(6);
    q -= p.dot(q) * p;
    q /= q.norm();
    const Mat frame = frame_orthogonal_to(p, q);
    REQUIRE(frame.cols() == 4);
    CHECK(max_abs(Mat(frame.transpose() * frame - Mat::Identity(4, 4))) < 1e-12);
    CHECK(max_abs(Vec(frame.transpose() * p)) < 1e-12);
    CHECK(max_abs(Vec(frame.transpose() * q)) < 1e-12);
  }
}

TEST_CASE("pfaffian squared equals the determinant") {
  for (const int n : {2, 4, 6, 8}) {
    for (int s = 0; s < 20; ++s) {
      CheckRng rng(11, "pfaffian", static_cast<std::uint64_t>(100 * n + s));
      Mat a(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = rng.normal();
      const Mat skew = a - a.transpose();
      const double pf = pfaffian(skew);
      CHECK(pf * pf == doctest::Approx(skew.determinant()).epsilon(1e-9));
    }
  }
}

TEST_CASE("pfaffian of the standard symplectic block is one") {
  Mat j = Mat::Zero(4, 4);
  j(0, 1) = 1;
  j(1, 0) = -1;
  j(2, 3) = 1;
  j(3, 2) = -1;
  CHECK(pfaffian(j) == doctest::Approx(1.0));
  CHECK(pfaffian(Mat::Zero(4, 4)) == 0.0);
  CHECK(pfaffian(Mat::Zero(3, 3)) == 0.0);  // odd dimension
}
