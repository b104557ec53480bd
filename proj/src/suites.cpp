#include "contactgeo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "contactgeo/contact_forms.hpp"
#include "contactgeo/degree.hpp"
#include "contactgeo/fibration.hpp"
#include "contactgeo/quaternion_algebra.hpp"
#include "contactgeo/rng.hpp"
#include "contactgeo/sphere_family.hpp"

namespace contactgeo {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> make_suite_names() {
  return {"quaternion", "contact", "transport", "sphere-family", "degree", "roundtrip", "all"};
}

std::map<std::string, double> make_default_tolerances() {
  return {
      {"quaternion-relations", 1e-13},
      {"combine-square", 1e-13},
      {"exp-closed-form", 1e-12},
      {"winding-integer", 0.5},
      {"contact-nondegeneracy", 1e-8},
      {"reeb-residual", 1e-10},
      {"reeb-closed-form", 1e-10},
      {"two-form", 1e-12},
      {"hamiltonian-reeb", 1e-10},
      {"hamiltonian-linearity", 1e-9},
      {"lemma-parallel", 1e-5},
      {"step-order", 1e-9},
      {"transport-identity", 1e-12},
      {"transport-concat", 1e-8},
      {"horizontality", 1e-8},
      {"kernel-preservation", 1e-6},
      {"trivialization-fixed-point", 1e-6},
      {"loop-at-infinity-trivial", 1e-12},
      {"lift-closed-form", 1e-8},
      {"lift-horizontality", 1e-10},
      {"pullback-analytic", 1e-9},
      {"pullback-spread", 1e-9},
      {"pullback-ode", 1e-6},
      {"loop-at-infinity-value", 1e-6},
      {"loop-at-infinity-limit", 1e-6},
      {"transport-group", 1e-12},
      {"reeb-identification", 1e-7},
      {"reeb-gram", 1e-9},
      {"conjugation-identity", 1e-12},
      {"h-extend", 1e-13},
      {"eta-invariance", 1e-10},
      {"sphere-linearity", 1e-9},
      {"roundtrip", 1e-10},
  };
}

class Runner {
 public:
  explicit Runner(const SuiteConfig& config) : config_(config) {
    tolerances_ = default_tolerances();
    for (const auto& [key, value] : config.tolerances) tolerances_[key] = value;
  }

  double tol(const std::string& family) const {
    const auto it = tolerances_.find(family);
    if (it == tolerances_.end()) {
      throw std::logic_error("unknown tolerance family '" + family + "'");
    }
    return it->second;
  }

  void run(const std::string& name, const std::string& family,
           const std::function<double()>& fn) {
    CheckResult result;
    result.name = name;
    result.tolerance = tol(family);
    const auto begin = std::chrono::steady_clock::now();
    try {
      result.max_residual = fn();
      result.pass = result.max_residual <= result.tolerance;
    } catch (const std::exception& err) {
      result.max_residual = 1e300;
      result.pass = false;
      result.note = err.what();
    }
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    checks_.push_back(std::move(result));
  }

  const SuiteConfig& config() const { return config_; }
  std::map<std::string, double> effective_tolerances() const { return tolerances_; }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  SuiteConfig config_;
  std::map<std::string, double> tolerances_;
  std::vector<CheckResult> checks_;
};

std::string tag(const std::string& base, int value) { return base + std::to_string(value); }

SphereDirection seeded_direction(CheckRng& rng) {
  const Vec e = rng.unit_vector(3);
  return SphereDirection(e[0], e[1], e[2]);
}

// ---------------------------------------------------------------- quaternion

void quaternion_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();
  for (int m = 1; m <= cfg.m; ++m) {
    runner.run(tag("quaternion-relations-m", m), "quaternion-relations", [m] {
      const QuaternionicTriple t = build_quaternionic_triple(m);
      const Mat id = Mat::Identity(4 * m, 4 * m);
      return std::max({max_abs(Mat(t.I.matrix() * t.I.matrix() + id)),
                       max_abs(Mat(t.J.matrix() * t.J.matrix() + id)),
                       max_abs(Mat(t.K.matrix() * t.K.matrix() + id)),
                       max_abs(Mat(t.I.matrix() * t.J.matrix() - t.K.matrix())),
                       max_abs(Mat(t.I.matrix() * t.J.matrix() + t.J.matrix() * t.I.matrix()))});
    });
  }

  runner.run("combine-square", "combine-square", [&] {
    const QuaternionicTriple t = build_quaternionic_triple(cfg.m);
    const Mat id = Mat::Identity(t.dim(), t.dim());
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      CheckRng rng(cfg.seed, "combine-square", s);
      const Mat u = combine(t, seeded_direction(rng)).matrix();
      worst = std::max(worst, max_abs(Mat(u * u + id)));
    }
    return worst;
  });

  runner.run("exp-group-property", "exp-closed-form", [&] {
    const QuaternionicTriple t = build_quaternionic_triple(std::min(cfg.m, 2));
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      CheckRng rng(cfg.seed, "exp-group", s);
      const Mat f = rng.uniform(0.25, 2.0) * combine(t, seeded_direction(rng)).matrix();
      const double a = rng.uniform(-kPi, kPi);
      const double b = rng.uniform(-kPi, kPi);
      worst = std::max(worst, max_abs(Mat(exp_scaled_structure(f, a + b) -
                                          exp_scaled_structure(f, a) * exp_scaled_structure(f, b))));
    }
    return worst;
  });

  runner.run("exp-orthogonality", "exp-closed-form", [&] {
    const QuaternionicTriple t = build_quaternionic_triple(std::min(cfg.m, 2));
    const Mat id = Mat::Identity(t.dim(), t.dim());
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      CheckRng rng(cfg.seed, "exp-orth", s);
      const Mat f = rng.uniform(0.25, 2.0) * combine(t, seeded_direction(rng)).matrix();
      const Mat e = exp_scaled_structure(f, rng.uniform(-2 * kPi, 2 * kPi));
      worst = std::max(worst, max_abs(Mat(e.transpose() * e - id)));
    }
    return worst;
  });

  for (int m = 1; m <= cfg.m; ++m) {
    runner.run(tag("winding-standard-m", m), "winding-integer", [m] {
      const QuaternionicTriple t = build_quaternionic_triple(m);
      std::vector<Mat> loop;
      const Mat id = Mat::Identity(4 * m, 4 * m);
      for (int s = 0; s <= 512; ++s) {
        const double theta = 2.0 * kPi * s / 512;
        loop.push_back(std::cos(theta) * id + std::sin(theta) * t.I.matrix());
      }
      return std::abs(det_winding(loop, t.I) - 2.0 * m);
    });
  }

  runner.run("winding-reparam-stability", "winding-integer", [&] {
    const QuaternionicTriple t = build_quaternionic_triple(cfg.m);
    const Mat id = Mat::Identity(t.dim(), t.dim());
    auto loop_at = [&](int res) {
      std::vector<Mat> loop;
      for (int s = 0; s <= res; ++s) {
        const double theta = 2.0 * kPi * s / res;
        loop.push_back(std::cos(theta) * id + std::sin(theta) * t.I.matrix());
      }
      return det_winding(loop, t.I);
    };
    return std::abs(static_cast<double>(loop_at(512) - loop_at(1024)));
  });
}

// ------------------------------------------------------------------- contact

void contact_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();
  for (int n = 0; n <= cfg.n; ++n) {
    const int d = 4 * n + 4;
    const QuaternionicTriple t = build_quaternionic_triple(n + 1);
    const double expected_pf = std::pow(2.0, (d - 2) / 2);

    runner.run(tag("contact-nondegeneracy-n", n), "contact-nondegeneracy", [&, n, d] {
      double worst = 0.0;
      for (int s = 0; s < cfg.samples; ++s) {
        CheckRng rng(cfg.seed, tag("contact-nondegeneracy-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        for (int i = 0; i < cfg.grid_theta; ++i) {
          for (int j = 0; j <= cfg.grid_phi; ++j) {
            const SphereDirection e = SphereDirection::from_angles(
                2.0 * kPi * i / cfg.grid_theta, kPi * j / cfg.grid_phi);
            const double pf = contact_nondegeneracy(ContactFormSpec(combine(t, e).matrix()), p);
            worst = std::max(worst, std::abs(pf - expected_pf));
          }
        }
      }
      return worst;
    });

    runner.run(tag("reeb-residual-n", n), "reeb-residual", [&, n, d] {
      double worst = 0.0;
      const int count = std::max(1000, cfg.samples);
      for (int s = 0; s < count; ++s) {
        CheckRng rng(cfg.seed, tag("reeb-residual-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        std::vector<Mat> gens = {t.I.matrix(), t.J.matrix(), t.K.matrix(),
                                 combine(t, seeded_direction(rng)).matrix()};
        for (const Mat& g : gens) {
          const ContactFormSpec form(g);
          worst = std::max(worst, reeb_residual(form, p, reeb_field(form, p)));
        }
      }
      // Full 10x10 direction grid on a smaller point sample.
      for (int s = 0; s < std::min(cfg.samples, 50); ++s) {
        CheckRng rng(cfg.seed, tag("reeb-grid-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        for (int i = 0; i < 10; ++i) {
          for (int j = 0; j < 10; ++j) {
            const SphereDirection e =
                SphereDirection::from_angles(2.0 * kPi * i / 10, kPi * (j + 0.5) / 10);
            const ContactFormSpec form(combine(t, e).matrix());
            worst = std::max(worst, reeb_residual(form, p, reeb_field(form, p)));
          }
        }
      }
      return worst;
    });

    runner.run(tag("reeb-closed-form-n", n), "reeb-closed-form", [&, n, d] {
      double worst = 0.0;
      const int count = std::max(1000, cfg.samples);
      for (int s = 0; s < count; ++s) {
        CheckRng rng(cfg.seed, tag("reeb-closed-form-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        const Mat g = combine(t, seeded_direction(rng)).matrix();
        const Vec r = reeb_field(ContactFormSpec(g), p);
        worst = std::max(worst, max_abs(Vec(r + g * p.coords())));
      }
      return worst;
    });

    runner.run(tag("two-form-antisymmetry-n", n), "two-form", [&, n, d] {
      double worst = 0.0;
      const ContactFormSpec form(t.I.matrix());
      for (int s = 0; s < cfg.samples; ++s) {
        CheckRng rng(cfg.seed, tag("two-form-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        const Mat frame = householder_frame(p.coords());
        Vec u = Vec::Zero(d), v = Vec::Zero(d);
        for (int c = 0; c < frame.cols(); ++c) {
          u += rng.normal() * frame.col(c);
          v += rng.normal() * frame.col(c);
        }
        worst = std::max(worst, std::abs(two_form(form, p, u, v) + two_form(form, p, v, u)));
        worst = std::max(worst, std::abs(two_form(form, p, u, u)));
      }
      return worst;
    });

    runner.run(tag("hamiltonian-reduces-to-reeb-n", n), "hamiltonian-reeb", [&, n, d] {
      const HamiltonianField one{[](const Vec&) { return 1.0; }, {}};
      const ContactFormSpec form(t.K.matrix());
      double worst = 0.0;
      for (int s = 0; s < std::min(cfg.samples, 50); ++s) {
        CheckRng rng(cfg.seed, tag("ham-reeb-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        worst = std::max(
            worst, max_abs(Vec(hamiltonian_vector_field(form, one, p) - reeb_field(form, p))));
      }
      return worst;
    });

    runner.run(tag("hamiltonian-linearity-n", n), "hamiltonian-linearity", [&, n, d] {
      const HamiltonianField h1{[](const Vec& p) { return p[0]; }, {}};
      const HamiltonianField h2{[](const Vec& p) { return p[1] * p[2]; }, {}};
      const double a = 0.8, b = -1.1;
      const HamiltonianField mix{[=](const Vec& p) { return a * p[0] + b * p[1] * p[2]; }, {}};
      const ContactFormSpec form(t.I.matrix());
      double worst = 0.0;
      for (int s = 0; s < std::min(cfg.samples, 50); ++s) {
        CheckRng rng(cfg.seed, tag("ham-linear-n", n), s);
        const SpherePoint p(rng.unit_vector(d));
        const Vec lhs = hamiltonian_vector_field(form, mix, p);
        const Vec rhs = a * hamiltonian_vector_field(form, h1, p) +
                        b * hamiltonian_vector_field(form, h2, p);
        worst = std::max(worst, max_abs(Vec(lhs - rhs)));
      }
      return worst;
    });
  }
}

// ----------------------------------------------------------------- transport

DiskFibration s3_fibration(const std::string& profile) {
  const QuaternionicTriple t = build_quaternionic_triple(1);
  return DiskFibration::trivialized(ContactFormSpec(t.I.matrix()), named_profile(profile));
}

void transport_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();
  const QuaternionicTriple t1 = build_quaternionic_triple(1);
  const ContactFormSpec alpha0(t1.I.matrix());

  for (const std::string profile : {"coord1", "sin-coord2", "mixed"}) {
    for (const double r0 : {0.3, 0.5}) {
      const std::string name =
          "lemma-parallel-" + profile + "-r" + std::to_string(static_cast<int>(r0 * 100));
      runner.run(name, "lemma-parallel", [&, profile, r0] {
        const DiskFibration fib = s3_fibration(profile);
        return check_lemma_parallel(fib, r0, 5, cfg.seed, cfg.rk4_step).max_endpoint_distance;
      });
    }
  }

  runner.run("lemma-parallel-step-order", "step-order", [&] {
    const DiskFibration fib = s3_fibration("mixed");
    const double coarse = check_lemma_parallel(fib, 0.5, 3, cfg.seed, 0.02).max_endpoint_distance;
    const double fine = check_lemma_parallel(fib, 0.5, 3, cfg.seed, 0.01).max_endpoint_distance;
    if (fine <= 0.0) return 0.0;
    const double ratio = coarse / fine;
    return (ratio >= 6.0 && ratio <= 64.0) ? 0.0 : ratio;
  });

  runner.run("transport-identity", "transport-identity", [&] {
    const DiskFibration fib = s3_fibration("mixed");
    const BasePath constant = BasePath::segment(Vec2(0.4, 0.3), Vec2(0.4, 0.3));
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      CheckRng rng(cfg.seed, "transport-identity", s);
      const Vec p = rng.unit_vector(4);
      const TransportResult res = parallel_transport(fib, constant, p, cfg.rk4_step);
      worst = std::max(worst, (res.endpoints[0].second - p).norm());
    }
    return worst;
  });

  runner.run("transport-concatenation", "transport-concat", [&] {
    const DiskFibration fib = s3_fibration("mixed");
    const BasePath leg1 = BasePath::segment(Vec2(0.2, 0.0), Vec2(0.5, kPi / 2));
    const BasePath leg2 = BasePath::segment(Vec2(0.5, kPi / 2), Vec2(0.3, kPi));
    const BasePath joined = BasePath::concatenation(leg1, leg2);
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      CheckRng rng(cfg.seed, "transport-concat", s);
      const Vec p = rng.unit_vector(4);
      const Vec mid = parallel_transport(fib, leg1, p, cfg.rk4_step).endpoints[0].second;
      const Vec two = parallel_transport(fib, leg2, mid, cfg.rk4_step).endpoints[0].second;
      const Vec one = parallel_transport(fib, joined, p, cfg.rk4_step).endpoints[0].second;
      worst = std::max(worst, (one - two).norm());
    }
    return worst;
  });

  runner.run("transport-horizontality", "horizontality", [&] {
    const DiskFibration fib = s3_fibration("mixed");
    std::vector<Vec> points;
    for (int s = 0; s < 5; ++s) {
      CheckRng rng(cfg.seed, "transport-horizontality", s);
      points.push_back(rng.unit_vector(4));
    }
    return parallel_transport(fib, BasePath::circle(0.4), points, cfg.rk4_step)
        .max_horizontality_residual;
  });

  runner.run("transport-kernel-preservation", "kernel-preservation", [&] {
    const DiskFibration fib = s3_fibration("mixed");
    const BasePath loop = BasePath::circle(0.4);
    const double eps = 1e-6;
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
      CheckRng rng(cfg.seed, "kernel-preservation", s);
      const SpherePoint p(rng.unit_vector(4));
      Vec q = alpha0.generator() * p.coords();
      const Mat xi = frame_orthogonal_to(p.coords(), Vec(q / q.norm()));
      Vec v = Vec::Zero(4);
      for (int c = 0; c < xi.cols(); ++c) v += rng.normal() * xi.col(c);
      v /= v.norm();
      Vec offset = p.coords() + eps * v;
      offset /= offset.norm();
      const Vec end = parallel_transport(fib, loop, p.coords(), cfg.rk4_step).endpoints[0].second;
      const Vec end_off = parallel_transport(fib, loop, offset, cfg.rk4_step).endpoints[0].second;
      Vec transported = (end_off - end) / eps;
      transported -= end.dot(transported) * end;  // tangential part at the endpoint
      transported /= transported.norm();
      worst = std::max(worst,
                       std::abs(evaluate_form(alpha0, SpherePoint::project(end), transported)));
    }
    return worst;
  });

  runner.run("radial-trivialization-fixed-point", "trivialization-fixed-point", [&] {
    ScalarProfile h;
    h.value = [](const Vec&, double r, double theta) {
      return r * r * (0.4 + 0.3 * std::sin(theta));
    };
    h.gradient_p = [](const Vec& p, double, double) -> Vec { return Vec::Zero(p.size()); };
    const DiskFibration fib = DiskFibration::trivialized(alpha0, h);
    std::vector<Vec> probes;
    for (int s = 0; s < 2; ++s) {
      CheckRng rng(cfg.seed, "trivialization-probes", s);
      probes.push_back(rng.unit_vector(4));
    }
    const TrivializationTable table =
        radial_trivialization(fib, probes, 4, 8, cfg.rk4_step, 0.8);
    double worst = 0.0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      for (std::size_t i = 0; i < table.r_values.size(); ++i) {
        for (std::size_t j = 0; j < table.theta_values.size(); ++j) {
          const double expected =
              h.value(probes[pi], table.r_values[i], table.theta_values[j]);
          worst = std::max(worst, std::abs(table.hamiltonian[pi](i, j) - expected));
          worst = std::max(worst, std::abs(table.conformal[pi](i, j)));
        }
      }
    }
    return worst;
  });

  runner.run("loop-at-infinity-trivial", "loop-at-infinity-trivial", [&] {
    const DiskFibration fib = DiskFibration::trivialized(alpha0, ScalarProfile{});
    std::vector<Vec> probes;
    for (int s = 0; s < 3; ++s) {
      CheckRng rng(cfg.seed, "loop-trivial-probes", s);
      probes.push_back(rng.unit_vector(4));
    }
    const LoopAtInfinityResult res =
        loop_at_infinity(fib, {0.5, 0.7, 0.9}, probes, 8, cfg.rk4_step);
    double worst = max_abs(res.limit);
    for (const Mat& g : res.samples) worst = std::max(worst, max_abs(g));
    return worst;
  });
}

// ------------------------------------------------------------- sphere-family

void sphere_family_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();
  const LinearContactSphere s = LinearContactSphere::standard(cfg.n);
  const int d = s.ambient_dim();
  const double delta = 1e-3;  // polar-coordinate guard band

  runner.run("family-contact-grid", "contact-nondegeneracy", [&] {
    const double expected = std::pow(2.0, (d - 2) / 2);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      CheckRng rng(cfg.seed, "family-contact-grid", k);
      const SpherePoint p(rng.unit_vector(d));
      for (int i = 0; i < cfg.grid_theta; ++i) {
        for (int j = 0; j <= cfg.grid_phi; ++j) {
          const SphereDirection e = SphereDirection::from_angles(2.0 * kPi * i / cfg.grid_theta,
                                                                 kPi * j / cfg.grid_phi);
          worst = std::max(worst, std::abs(contact_nondegeneracy(s.form_at(e), p) - expected));
        }
      }
    }
    return worst;
  });

  runner.run("lift-closed-form", "lift-closed-form", [&] {
    const DiskFibration fib = polar_disk_fibration(s);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      CheckRng rng(cfg.seed, "lift-closed-form", k);
      const SpherePoint p(rng.unit_vector(d));
      for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 8; ++j) {
          const double theta = 2.0 * kPi * i / 16;
          const double phi = delta + (kPi - 2 * delta) * j / 7;
          const Lift lift = horizontal_lift(fib, p, phi, theta, Vec2(1.0, 0.0));
          const TotalVector closed = lifted_polar_field(s, theta, phi, p);
          worst = std::max(worst, max_abs(Vec(lift.fiber - closed.fiber)));
        }
      }
    }
    return worst;
  });

  runner.run("lift-horizontality", "lift-horizontality", [&] {
    // Residuals of the closed-form lift in the defining equations of the
    // connection: alpha(w) and d alpha(w, .) + base correction on the kernel.
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      CheckRng rng(cfg.seed, "lift-horizontality", k);
      const SpherePoint p(rng.unit_vector(d));
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      const double phi = rng.uniform(delta, kPi - delta);
      const Mat a = s.structure_at(SphereDirection::from_angles(theta, phi)).matrix();
      const Mat da_dphi = std::cos(phi) * (std::cos(theta) * s.triple.I.matrix() +
                                           std::sin(theta) * s.triple.J.matrix()) -
                          std::sin(phi) * s.triple.K.matrix();
      const Vec w = lifted_polar_field(s, theta, phi, p).fiber;
      worst = std::max(worst, std::abs(p.coords().dot(a * w)));
      Vec q = a * p.coords();
      const Mat xi = frame_orthogonal_to(p.coords(), Vec(q / q.norm()));
      for (int c = 0; c < xi.cols(); ++c) {
        const Vec z = xi.col(c);
        worst = std::max(worst, std::abs(2.0 * w.dot(a * z) + p.coords().dot(da_dphi * z)));
      }
    }
    return worst;
  });

  runner.run("pullback-analytic", "pullback-analytic", [&] {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      CheckRng rng(cfg.seed, "pullback-analytic", k);
      const SpherePoint p(rng.unit_vector(d));
      for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 8; ++j) {
          const double theta = 2.0 * kPi * i / 16;
          const double phi = delta + (kPi - 2 * delta) * j / 7;
          const double expected = std::sin(phi / 2) * std::sin(phi / 2);
          worst = std::max(worst,
                           std::abs(pullback_hamiltonian(s, theta, phi, p) - expected));
        }
      }
    }
    return worst;
  });

  runner.run("pullback-spread", "pullback-spread", [&] {
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double phi = delta + (kPi - 2 * delta) * j / 7;
      double lo = 1e300, hi = -1e300;
      for (int k = 0; k < 20; ++k) {
        CheckRng rng(cfg.seed, "pullback-spread", 20 * j + k);
        const SpherePoint p(rng.unit_vector(d));
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const double value = pullback_hamiltonian(s, theta, phi, p);
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
      worst = std::max(worst, hi - lo);
    }
    return worst;
  });

  runner.run("pullback-ode", "pullback-ode", [&] {
    const double step = std::min(cfg.rk4_step, 1e-3);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      CheckRng rng(cfg.seed, "pullback-ode", k);
      const SpherePoint p(rng.unit_vector(d));
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const double theta = 2.0 * kPi * i / 4 + 0.2;
          const double phi = delta + (kPi - 2 * delta) * j / 3;
          const double expected = std::sin(phi / 2) * std::sin(phi / 2);
          worst = std::max(
              worst, std::abs(pullback_hamiltonian_ode(s, theta, phi, p, step) - expected));
        }
      }
    }
    return worst;
  });

  runner.run("loop-at-infinity-value", "loop-at-infinity-value", [&] {
    const DiskFibration fib = polar_disk_fibration(s);
    std::vector<Vec> probes;
    for (int k = 0; k < 4; ++k) {
      CheckRng rng(cfg.seed, "loop-at-infinity-probes", k);
      probes.push_back(rng.unit_vector(d));
    }
    const std::vector<double> eps = {1e-1, 1e-2};
    const std::vector<double> radii = {kPi - eps[0], kPi - eps[1]};
    const LoopAtInfinityResult res = loop_at_infinity(
        fib, radii, probes, 8, std::max(cfg.rk4_step, 2e-3), kPi);
    double worst = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double bound = eps[k] * eps[k] / 4.0;
      const double value = max_abs(Mat(res.samples[k].array() + 1.0));
      worst = std::max(worst, value - bound);
    }
    return std::max(worst, 0.0);
  });

  runner.run("radial-trivialization-family", "trivialization-fixed-point", [&] {
    const DiskFibration fib = polar_disk_fibration(s);
    std::vector<Vec> probes;
    for (int k = 0; k < 2; ++k) {
      CheckRng rng(cfg.seed, "family-trivialization-probes", k);
      probes.push_back(rng.unit_vector(d));
    }
    const TrivializationTable table =
        radial_trivialization(fib, probes, 4, 6, std::max(cfg.rk4_step, 2e-3), 2.5);
    double worst = 0.0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      for (std::size_t i = 0; i < table.r_values.size(); ++i) {
        const double expected = std::pow(std::sin(table.r_values[i] / 2.0), 2);
        for (std::size_t j = 0; j < table.theta_values.size(); ++j) {
          worst = std::max(worst, std::abs(table.hamiltonian[pi](i, j) - expected));
          worst = std::max(worst, std::abs(table.conformal[pi](i, j)));
        }
      }
    }
    return worst;
  });

  runner.run("loop-at-infinity-limit", "loop-at-infinity-limit", [&] {
    const DiskFibration fib = polar_disk_fibration(s);
    std::vector<Vec> probes;
    for (int k = 0; k < 4; ++k) {
      CheckRng rng(cfg.seed, "loop-at-infinity-probes", k);
      probes.push_back(rng.unit_vector(d));
    }
    const LoopAtInfinityResult res = loop_at_infinity(
        fib, {kPi - 1e-1, kPi - 1e-2}, probes, 8, std::max(cfg.rk4_step, 2e-3), kPi);
    return max_abs(Mat(res.limit.array() + 1.0));
  });

  runner.run("transport-group-property", "transport-group", [&] {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      CheckRng rng(cfg.seed, "transport-group", k);
      const SpherePoint p(rng.unit_vector(d));
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      const double phi1 = rng.uniform(0.0, kPi);
      const double phi2 = rng.uniform(0.0, kPi);
      const Vec once = transport_flow(s, theta, phi1 + phi2, p).coords();
      const Vec twice =
          transport_flow(s, theta, phi2, transport_flow(s, theta, phi1, p)).coords();
      worst = std::max(worst, max_abs(Vec(once - twice)));
    }
    return worst;
  });

  runner.run("reeb-gram", "reeb-gram", [&] {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      CheckRng rng(cfg.seed, "reeb-gram", k);
      const SpherePoint p(rng.unit_vector(d));
      Mat reebs(d, 3);
      reebs.col(0) = reeb_field(s.form0(), p);
      reebs.col(1) = reeb_field(s.form1(), p);
      reebs.col(2) = reeb_field(s.form2(), p);
      const double gram = (reebs.transpose() * reebs).determinant();
      worst = std::max(worst, std::max(0.0, 0.9 - gram));
    }
    return worst;
  });

  runner.run("reeb-identification", "reeb-identification", [&] {
    const int samples = std::min(cfg.samples, 100);
    return reeb_identification(s, samples, cfg.seed, cfg.rk4_step).matched_distance;
  });

  runner.run("reeb-identification-unique", "winding-integer", [&] {
    const ReebIdentification res = reeb_identification(s, 5, cfg.seed, cfg.rk4_step);
    // The rejected sign must be far off; the match must be unique.
    return res.rejected_distance > 0.5 ? 0.0 : 1.0;
  });
}

// -------------------------------------------------------------------- degree

void degree_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();

  for (int m = 1; m <= std::max(4, cfg.m); ++m) {
    runner.run(tag("sphere-degree-m", m), "winding-integer", [m] {
      return std::abs(sphere_degree(build_quaternionic_triple(m), 512) - 2.0 * m);
    });
  }

  runner.run("degree-resolution-stability", "winding-integer", [&] {
    const QuaternionicTriple t = build_quaternionic_triple(cfg.m);
    return std::abs(
        static_cast<double>(sphere_degree(t, 512) - sphere_degree(t, 1024)));
  });

  for (int m = 1; m <= cfg.m; ++m) {
    runner.run(tag("conjugation-identities-m", m), "conjugation-identity", [m] {
      const QuaternionicTriple t = build_quaternionic_triple(m);
      const Mat id = Mat::Identity(4 * m, 4 * m);
      double worst = 0.0;
      for (int i = 0; i < 64; ++i) {
        const double theta = 2.0 * kPi * i / 64;
        for (const double phi : {0.0, kPi / 3, kPi / 2, 2 * kPi / 3, kPi}) {
          const ConjugationPath path = conjugation_path(t, theta, phi);
          const Mat jtheta = std::cos(theta) * t.J.matrix() + std::sin(theta) * t.K.matrix();
          worst = std::max(worst, max_abs(Mat(path.p.transpose() * path.p - id)));
          worst = std::max(worst,
                           max_abs(Mat(path.itilde.matrix() -
                                       (std::cos(phi) * t.I.matrix() + std::sin(phi) * jtheta))));
        }
        const Mat decomposition =
            (std::cos(theta) * id + std::sin(theta) * t.I.matrix()) * t.J.matrix();
        worst = std::max(worst, max_abs(Mat(conjugation_path(t, theta, kPi).p - decomposition)));
      }
      return worst;
    });
  }

  runner.run("h-extend-properties", "h-extend", [&] {
    double worst = 0.0;
    for (const int k : {3, 7, 11}) {
      for (int s = 0; s < 100; ++s) {
        CheckRng rng(cfg.seed, tag("h-extend-", k), s);
        AlmostContactPoint acp;
        acp.v = rng.unit_vector(k);
        // Random complex structure on the complement via orthogonal conjugation.
        Mat noise(k - 1, k - 1);
        for (int r = 0; r < k - 1; ++r)
          for (int c = 0; c < k - 1; ++c) noise(r, c) = rng.normal();
        const Mat q = Eigen::HouseholderQR<Mat>(noise).householderQ();
        Mat jstd = Mat::Zero(k - 1, k - 1);
        for (int b = 0; b + 1 < k - 1; b += 2) {
          jstd(b, b + 1) = -1.0;
          jstd(b + 1, b) = 1.0;
        }
        acp.j = q * jstd * q.transpose();
        const Mat ext = h_extend(acp).matrix();
        const Mat id = Mat::Identity(k + 1, k + 1);
        worst = std::max({worst, max_abs(Mat(ext * ext + id)),
                          max_abs(Mat(ext.transpose() * ext - id)),
                          max_abs(Mat(ext.transpose() + ext))});
      }
    }
    return worst;
  });

  runner.run("eta-invariance", "eta-invariance", [&] {
    const int n = std::max(1, cfg.m - 1);
    const QuaternionicTriple t = build_quaternionic_triple(n + 1);
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      CheckRng rng(cfg.seed, "eta-invariance", s);
      const QuaternionicFrame frame = quaternionic_frame(t, SpherePoint(rng.unit_vector(t.dim())));
      for (const Mat& g : {t.I.matrix(), t.J.matrix(), t.K.matrix()}) {
        const Mat image = g * frame.eta;
        const Mat residual = image - frame.eta * (frame.eta.transpose() * image);
        worst = std::max(worst, max_abs(residual));
      }
    }
    return worst;
  });

  runner.run("evaluate-sphere-linearity", "sphere-linearity", [&] {
    const LinearContactSphere s = LinearContactSphere::standard(cfg.m - 1);
    Vec q = Vec::Zero(s.ambient_dim());
    q[0] = 1.0;
    const QuaternionicFrame frame = quaternionic_frame(s.triple, SpherePoint(q));
    const StructureSphere sphere = evaluate_sphere_at_point(s, frame, 16, 8);
    return structure_sphere_degree(sphere, 256).linearity_residual;
  });

  runner.run("evaluate-sphere-degree", "winding-integer", [&] {
    const LinearContactSphere s = LinearContactSphere::standard(cfg.m - 1);
    Vec q = Vec::Zero(s.ambient_dim());
    q[0] = 1.0;
    const QuaternionicFrame frame = quaternionic_frame(s.triple, SpherePoint(q));
    const StructureSphere sphere = evaluate_sphere_at_point(s, frame, 16, 8);
    return std::abs(structure_sphere_degree(sphere, 256).degree - 2.0 * cfg.m);
  });
}

// ----------------------------------------------------------------- roundtrip

void roundtrip_suite(Runner& runner) {
  const SuiteConfig& cfg = runner.config();
  const QuaternionicTriple t = build_quaternionic_triple(cfg.m);
  Vec q = Vec::Zero(t.dim());
  q[0] = 1.0;
  const QuaternionicFrame frame = quaternionic_frame(t, SpherePoint(q));

  const std::map<std::string, const ComplexStructure*> structures = {
      {"I", &t.I}, {"J", &t.J}, {"K", &t.K}};
  for (const auto& [label, j] : structures) {
    runner.run("roundtrip-" + label, "roundtrip", [&, j] {
      return max_abs(Mat(roundtrip_identity(*j, frame).matrix() - j->matrix()));
    });
  }

  runner.run("roundtrip-idempotence", "roundtrip", [&] {
    const ComplexStructure once = roundtrip_identity(t.I, frame);
    const ComplexStructure twice = roundtrip_identity(once, frame);
    return max_abs(Mat(twice.matrix() - once.matrix()));
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = make_suite_names();
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tolerances = make_default_tolerances();
  return tolerances;
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  if (grid_theta < 4) throw std::invalid_argument("grid-theta must be at least 4");
  if (grid_phi < 2) throw std::invalid_argument("grid-phi must be at least 2");
  if (!(rk4_step > 0.0) || rk4_step > 0.1) {
    throw std::invalid_argument("rk4-step must lie in (0, 0.1]");
  }
  const auto& families = default_tolerances();
  for (const auto& [key, value] : tolerances) {
    if (families.find(key) == families.end()) {
      throw std::invalid_argument("unknown tolerance family '" + key + "'");
    }
    if (!(value > 0.0)) throw std::invalid_argument("tolerance '" + key + "' must be positive");
  }
}

VerificationReport run_suite(const SuiteConfig& config) {
  config.validate();
  Runner runner(config);
  if (config.suite == "quaternion" || config.suite == "all") quaternion_suite(runner);
  if (config.suite == "contact" || config.suite == "all") contact_suite(runner);
  if (config.suite == "transport" || config.suite == "all") transport_suite(runner);
  if (config.suite == "sphere-family" || config.suite == "all") sphere_family_suite(runner);
  if (config.suite == "degree" || config.suite == "all") degree_suite(runner);
  if (config.suite == "roundtrip" || config.suite == "all") roundtrip_suite(runner);

  VerificationReport report;
  report.suite = config.suite;
  nlohmann::json echo;
  echo["suite"] = config.suite;
  echo["n"] = config.n;
  echo["m"] = config.m;
  echo["samples"] = config.samples;
  echo["seed"] = config.seed;
  echo["gridTheta"] = config.grid_theta;
  echo["gridPhi"] = config.grid_phi;
  echo["rk4Step"] = config.rk4_step;
  echo["tolerances"] = runner.effective_tolerances();
  report.config_echo = echo;
  report.checks = runner.take();
  return report;
}

}  // namespace contactgeo
