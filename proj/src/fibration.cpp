#include "contactgeo/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "contactgeo/rng.hpp"

namespace contactgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBaseFdStep = 1e-6;

Vec profile_gradient(const ScalarProfile& profile, const Vec& p, double r, double theta) {
  const int d = static_cast<int>(p.size());
  if (profile.zero()) return Vec::Zero(d);
  HamiltonianField h;
  h.value = [&](const Vec& q) { return profile.value(q, r, theta); };
  if (profile.gradient_p) {
    h.gradient = [&](const Vec& q) { return profile.gradient_p(q, r, theta); };
  }
  return tangential_gradient(h, SpherePoint::project(p));
}

}  // namespace

ScalarProfile named_profile(const std::string& name) {
  if (name == "zero") return ScalarProfile{};
  if (name == "coord1") {
    return ScalarProfile{[](const Vec& p, double r, double) { return r * r * p[0]; },
                         [](const Vec& p, double r, double) {
                           Vec g = Vec::Zero(p.size());
                           g[0] = r * r;
                           return g;
                         }};
  }
  if (name == "sin-coord2") {
    return ScalarProfile{
        [](const Vec& p, double r, double theta) { return r * r * std::sin(theta) * p[1]; },
        [](const Vec& p, double r, double theta) {
          Vec g = Vec::Zero(p.size());
          g[1] = r * r * std::sin(theta);
          return g;
        }};
  }
  if (name == "mixed") {
    return ScalarProfile{[](const Vec& p, double r, double theta) {
                           return r * r * (p[0] * p[1] + std::cos(theta) * p[2]);
                         },
                         [](const Vec& p, double r, double theta) {
                           Vec g = Vec::Zero(p.size());
                           g[0] = r * r * p[1];
                           g[1] = r * r * p[0];
                           g[2] = r * r * std::cos(theta);
                           return g;
                         }};
  }
  throw std::invalid_argument("named_profile: unknown profile '" + name + "'");
}

DiskFibration DiskFibration::trivialized(ContactFormSpec fiberForm, ScalarProfile h,
                                         double quadraticBound) {
  DiskFibration fib;
  fib.dim_ = fiberForm.dim();
  fib.trivialized_ = true;
  fib.constant_generator_ = fiberForm.generator();
  fib.theta_coef_ = std::move(h);
  if (!fib.theta_coef_.zero()) {
    // |H| = O(r^2) near the center, probed on a fixed deterministic sample.
    for (const double r : {1e-2, 1e-3}) {
      for (int k = 0; k < 8; ++k) {
        CheckRng rng(0xface, "profile-vanishing", k);
        const Vec p = rng.unit_vector(fib.dim_);
        const double theta = kPi * k / 4.0;
        const double h0 = fib.theta_coef_.value(p, r, theta);
        if (std::abs(h0) > quadraticBound * r * r + 1e-12) {
          throw std::invalid_argument("DiskFibration: profile is not O(r^2), |H(p," +
                                      std::to_string(r) + ",theta)| = " + std::to_string(h0));
        }
      }
    }
  }
  return fib;
}

DiskFibration DiskFibration::varying(int fiberDim, std::function<Mat(double, double)> generator,
                                     std::function<std::pair<Mat, Mat>(double, double)> derivs,
                                     ScalarProfile thetaCoef, ScalarProfile radialCoef) {
  if (!generator) throw std::invalid_argument("DiskFibration::varying: generator required");
  DiskFibration fib;
  fib.dim_ = fiberDim;
  fib.trivialized_ = false;
  fib.generator_ = std::move(generator);
  fib.generator_derivs_ = std::move(derivs);
  fib.theta_coef_ = std::move(thetaCoef);
  fib.radial_coef_ = std::move(radialCoef);
  return fib;
}

Mat DiskFibration::generator(double r, double theta) const {
  return trivialized_ ? constant_generator_ : generator_(r, theta);
}

std::pair<Mat, Mat> DiskFibration::generator_derivatives(double r, double theta) const {
  if (trivialized_) {
    const Mat zero = Mat::Zero(dim_, dim_);
    return {zero, zero};
  }
  if (generator_derivs_) return generator_derivs_(r, theta);
  const double h = kBaseFdStep;
  Mat dr = (generator_(r + h, theta) - generator_(r - h, theta)) / (2.0 * h);
  Mat dth = (generator_(r, theta + h) - generator_(r, theta - h)) / (2.0 * h);
  return {std::move(dr), std::move(dth)};
}

double DiskFibration::theta_coef(const Vec& p, double r, double theta) const {
  return theta_coef_.zero() ? 0.0 : theta_coef_.value(p, r, theta);
}

double DiskFibration::radial_coef(const Vec& p, double r, double theta) const {
  return radial_coef_.zero() ? 0.0 : radial_coef_.value(p, r, theta);
}

Vec DiskFibration::theta_coef_gradient(const Vec& p, double r, double theta) const {
  return profile_gradient(theta_coef_, p, r, theta);
}

Vec DiskFibration::radial_coef_gradient(const Vec& p, double r, double theta) const {
  return profile_gradient(radial_coef_, p, r, theta);
}

Lift horizontal_lift(const DiskFibration& fib, const SpherePoint& p, double r, double theta,
                     const Vec2& u) {
  const int d = fib.fiber_dim();
  if (p.dim() != d) throw std::invalid_argument("horizontal_lift: dimension mismatch");
  const Mat a = fib.generator(r, theta);
  Vec q = a * p.coords();
  const double nq = q.norm();
  if (nq < 1e-10) {
    throw std::runtime_error("horizontal_lift: fiber form vanishes (degenerate fibration)");
  }
  const Mat frame = householder_frame(p.coords());
  const Mat xi = frame_orthogonal_to(p.coords(), Vec(q / nq));

  Mat sys(d - 1, d - 1);
  Vec rhs(d - 1);
  sys.row(0) = p.coords().transpose() * a * frame;
  rhs[0] = -(fib.theta_coef(p.coords(), r, theta) * u[1] +
             fib.radial_coef(p.coords(), r, theta) * u[0]);
  const auto [da_r, da_th] = fib.generator_derivatives(r, theta);
  const Vec g_th = u[1] != 0.0 ? fib.theta_coef_gradient(p.coords(), r, theta) : Vec(Vec::Zero(d));
  const Vec g_r = u[0] != 0.0 ? fib.radial_coef_gradient(p.coords(), r, theta) : Vec(Vec::Zero(d));
  for (int b = 0; b + 2 < d; ++b) {
    const Vec z = xi.col(b);
    sys.row(1 + b) = -2.0 * z.transpose() * a * frame;
    rhs[1 + b] = u[1] * (g_th.dot(z) - p.coords().dot(da_th * z)) +
                 u[0] * (g_r.dot(z) - p.coords().dot(da_r * z));
  }
  const Vec c = sys.partialPivLu().solve(rhs);
  const Vec residual = sys * c - rhs;
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!c.allFinite() || residual.cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::runtime_error("horizontal_lift: singular connection solve, residual = " +
                             std::to_string(residual.cwiseAbs().maxCoeff()));
  }
  Lift lift;
  lift.fiber = frame * c;
  lift.base = u;
  lift.alpha_residual = std::abs(residual[0]);
  lift.dalpha_residual = d > 2 ? residual.tail(d - 2).cwiseAbs().maxCoeff() : 0.0;
  return lift;
}

Vec2 BasePath::velocity_at(double t) const {
  if (velocity) return velocity(t);
  const double h = kBaseFdStep;
  const double lo = std::max(0.0, t - h);
  const double hi = std::min(1.0, t + h);
  return (position(hi) - position(lo)) / (hi - lo);
}

BasePath BasePath::circle(double r0) {
  BasePath path;
  path.position = [r0](double t) { return Vec2(r0, 2.0 * kPi * t); };
  path.velocity = [](double) { return Vec2(0.0, 2.0 * kPi); };
  return path;
}

BasePath BasePath::segment(const Vec2& from, const Vec2& to) {
  BasePath path;
  path.position = [from, to](double t) { return Vec2(from + t * (to - from)); };
  path.velocity = [from, to](double) { return Vec2(to - from); };
  return path;
}

BasePath BasePath::concatenation(const BasePath& first, const BasePath& second) {
  BasePath path;
  path.position = [first, second](double t) {
    return t < 0.5 ? first.position(2.0 * t) : second.position(2.0 * t - 1.0);
  };
  path.velocity = [first, second](double t) {
    return Vec2(2.0 * (t < 0.5 ? first.velocity_at(2.0 * t) : second.velocity_at(2.0 * t - 1.0)));
  };
  for (const double b : first.breakpoints) path.breakpoints.push_back(b / 2.0);
  path.breakpoints.push_back(0.5);
  for (const double b : second.breakpoints) path.breakpoints.push_back(0.5 + b / 2.0);
  return path;
}

TransportResult parallel_transport(const DiskFibration& fib, const BasePath& path,
                                   const std::vector<Vec>& points, double step) {
  if (step <= 0.0) throw std::invalid_argument("parallel_transport: step must be positive");
  std::vector<double> stops = {0.0};
  for (const double b : path.breakpoints) {
    if (b > 0.0 && b < 1.0) stops.push_back(b);
  }
  stops.push_back(1.0);
  std::sort(stops.begin(), stops.end());

  TransportResult result;
  for (const Vec& p0 : points) {
    Vec p = p0 / p0.norm();
    int total_steps = 0;
    for (std::size_t seg = 0; seg + 1 < stops.size(); ++seg) {
      const double a = stops[seg], b = stops[seg + 1];
      // Velocity queries stay strictly inside the smooth piece.
      auto field = [&](const Vec& state, double t) -> Vec {
        const double tv = std::clamp(t, a + 1e-9, b - 1e-9);
        const Vec2 base = path.position(t);
        const Lift lift = horizontal_lift(fib, SpherePoint::project(state), base[0], base[1],
                                          path.velocity_at(tv));
        result.max_horizontality_residual = std::max(
            {result.max_horizontality_residual, lift.alpha_residual, lift.dalpha_residual});
        return lift.fiber;
      };
      const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
      const double dt = (b - a) / n;
      for (int i = 0; i < n; ++i) {
        const double t = a + i * dt;
        const Vec k1 = field(p, t);
        const Vec k2 = field(p + 0.5 * dt * k1, t + 0.5 * dt);
        const Vec k3 = field(p + 0.5 * dt * k2, t + 0.5 * dt);
        const Vec k4 = field(p + dt * k3, t + dt);
        p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        p /= p.norm();
      }
      total_steps += n;
    }
    result.steps = total_steps;
    result.endpoints.emplace_back(p0, p);
  }
  return result;
}

TransportResult parallel_transport(const DiskFibration& fib, const BasePath& path, const Vec& p0,
                                   double step) {
  return parallel_transport(fib, path, std::vector<Vec>{p0}, step);
}

LemmaParallelResult check_lemma_parallel(const DiskFibration& fib, double r0, int samples,
                                         std::uint64_t seed, double step) {
  if (!fib.is_trivialized()) {
    throw std::invalid_argument("check_lemma_parallel: fibration must be in the form alpha0 + H dtheta");
  }
  if (r0 < 0.0 || r0 >= 1.0) throw std::invalid_argument("check_lemma_parallel: r0 outside [0,1)");
  LemmaParallelResult out;
  out.samples = samples;
  if (r0 == 0.0) return out;  // the fiber over the center is fixed

  const int d = fib.fiber_dim();
  std::vector<Vec> points;
  for (int s = 0; s < samples; ++s) {
    CheckRng rng(seed, "lemma-parallel", s);
    points.push_back(rng.unit_vector(d));
  }
  const TransportResult transported =
      parallel_transport(fib, BasePath::circle(r0), points, step);
  out.max_horizontality_residual = transported.max_horizontality_residual;

  const ContactFormSpec fiberForm(fib.generator(0.0, 0.0));
  TimeHamiltonian g;
  g.value = [&fib, r0](const Vec& p, double theta) { return -fib.theta_coef(p, r0, theta); };
  g.gradient = [&fib, r0](const Vec& p, double theta) -> Vec {
    return -fib.theta_coef_gradient(p, r0, theta);
  };
  for (int s = 0; s < samples; ++s) {
    const SpherePoint flowed = hamiltonian_flow(fiberForm, g, SpherePoint::project(points[s]),
                                                2.0 * kPi, kPi * step);
    const double dist = (transported.endpoints[s].second - flowed.coords()).norm();
    out.max_endpoint_distance = std::max(out.max_endpoint_distance, dist);
  }
  return out;
}

namespace {

// Transports a point radially from the center along the ray at fixed theta,
// recording the state at each requested radius (assumed increasing).
std::vector<Vec> radial_ray(const DiskFibration& fib, double theta, const Vec& start,
                            const std::vector<double>& stops, double step, double* maxResidual) {
  std::vector<Vec> states;
  Vec p = start / start.norm();
  double r = 0.0;
  auto field = [&](const Vec& state, double at) -> Vec {
    const Lift lift =
        horizontal_lift(fib, SpherePoint::project(state), at, theta, Vec2(1.0, 0.0));
    if (maxResidual != nullptr) {
      *maxResidual = std::max({*maxResidual, lift.alpha_residual, lift.dalpha_residual});
    }
    return lift.fiber;
  };
  for (const double target : stops) {
    const int n = std::max(1, static_cast<int>(std::ceil((target - r) / step)));
    const double dr = (target - r) / n;
    for (int i = 0; i < n; ++i) {
      const Vec k1 = field(p, r);
      const Vec k2 = field(p + 0.5 * dr * k1, r + 0.5 * dr);
      const Vec k3 = field(p + 0.5 * dr * k2, r + 0.5 * dr);
      const Vec k4 = field(p + dr * k3, r + dr);
      p += (dr / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      p /= p.norm();
      r += dr;
    }
    states.push_back(p);
  }
  return states;
}

// Trivialized Hamiltonian coefficient and conformal factor at the listed
// radii: H = e^{-g} alpha(d Phi / d theta + H_in), e^g = alpha(d Phi (R_0)).
void trivialized_profile_samples(const DiskFibration& fib, const Vec& probe, double theta,
                                 const std::vector<double>& stops, double step, double* maxResidual,
                                 std::vector<double>* hOut, std::vector<double>* gOut) {
  const double dtheta = 1e-4;
  const double eps = 1e-6;
  const ContactFormSpec centerForm(fib.generator(0.0, theta));
  const Vec r0 = reeb_field(centerForm, SpherePoint::project(probe));
  Vec offset = probe + eps * r0;
  offset /= offset.norm();

  const std::vector<Vec> mid = radial_ray(fib, theta, probe, stops, step, maxResidual);
  const std::vector<Vec> plus = radial_ray(fib, theta + dtheta, probe, stops, step, maxResidual);
  const std::vector<Vec> minus = radial_ray(fib, theta - dtheta, probe, stops, step, maxResidual);
  const std::vector<Vec> shifted = radial_ray(fib, theta, offset, stops, step, maxResidual);

  hOut->resize(stops.size());
  gOut->resize(stops.size());
  for (std::size_t i = 0; i < stops.size(); ++i) {
    const Mat a = fib.generator(stops[i], theta);
    const Vec dphi_dtheta = (plus[i] - minus[i]) / (2.0 * dtheta);
    const double hraw =
        mid[i].dot(a * dphi_dtheta) + fib.theta_coef(mid[i], stops[i], theta);
    const Vec dphi_reeb = (shifted[i] - mid[i]) / eps;
    const double expg = mid[i].dot(a * dphi_reeb);
    if (!(expg > 0.0)) {
      throw std::runtime_error("radial_trivialization: conformal factor degenerated");
    }
    (*hOut)[i] = hraw / expg;
    (*gOut)[i] = std::log(expg);
  }
}

}  // namespace

TrivializationTable radial_trivialization(const DiskFibration& fib, const std::vector<Vec>& probes,
                                          int gridR, int gridTheta, double step, double rMax) {
  if (gridR < 1 || gridTheta < 4) {
    throw std::invalid_argument("radial_trivialization: grid too coarse");
  }
  if (step <= 0.0 || rMax <= 0.0) {
    throw std::invalid_argument("radial_trivialization: step and rMax must be positive");
  }
  TrivializationTable table;
  for (int i = 1; i <= gridR; ++i) table.r_values.push_back(rMax * i / gridR);
  for (int j = 0; j < gridTheta; ++j) table.theta_values.push_back(2.0 * kPi * j / gridTheta);
  for (const Vec& probe : probes) {
    Mat h(gridR, gridTheta), g(gridR, gridTheta);
    for (int j = 0; j < gridTheta; ++j) {
      std::vector<double> hcol, gcol;
      trivialized_profile_samples(fib, probe, table.theta_values[j], table.r_values, step,
                                  &table.max_lift_residual, &hcol, &gcol);
      for (int i = 0; i < gridR; ++i) {
        h(i, j) = hcol[i];
        g(i, j) = gcol[i];
      }
    }
    table.hamiltonian.push_back(std::move(h));
    table.conformal.push_back(std::move(g));
  }
  if (table.max_lift_residual > 1e-6) {
    throw std::runtime_error("radial_trivialization: lift residual " +
                             std::to_string(table.max_lift_residual) + " exceeds tolerance");
  }
  return table;
}

LoopAtInfinityResult loop_at_infinity(const DiskFibration& fib, const std::vector<double>& rSeq,
                                      const std::vector<Vec>& probes, int gridTheta, double step,
                                      double rLimit) {
  if (rSeq.size() < 2) throw std::invalid_argument("loop_at_infinity: need at least two radii");
  for (std::size_t k = 0; k < rSeq.size(); ++k) {
    if (rSeq[k] >= rLimit || rSeq[k] <= 0.0 || (k > 0 && rSeq[k] <= rSeq[k - 1])) {
      throw std::invalid_argument("loop_at_infinity: radii must increase toward the limit");
    }
  }
  if (probes.empty() || gridTheta < 1) {
    throw std::invalid_argument("loop_at_infinity: empty sample set");
  }

  LoopAtInfinityResult out;
  out.r_values = rSeq;
  const int np = static_cast<int>(probes.size());
  out.samples.assign(rSeq.size(), Mat::Zero(np, gridTheta));

  for (int pi = 0; pi < np; ++pi) {
    for (int j = 0; j < gridTheta; ++j) {
      const double theta = 2.0 * kPi * j / gridTheta;
      if (fib.is_trivialized()) {
        for (std::size_t k = 0; k < rSeq.size(); ++k) {
          out.samples[k](pi, j) = -fib.theta_coef(probes[pi], rSeq[k], theta);
        }
      } else {
        std::vector<double> h, g;
        double residual = 0.0;
        trivialized_profile_samples(fib, probes[pi], theta, rSeq, step, &residual, &h, &g);
        for (std::size_t k = 0; k < rSeq.size(); ++k) out.samples[k](pi, j) = -h[k];
      }
    }
  }

  std::vector<double> diffs;
  for (std::size_t k = 1; k < rSeq.size(); ++k) {
    diffs.push_back(max_abs(Mat(out.samples[k] - out.samples[k - 1])));
  }
  out.max_cauchy_residual = diffs.back();
  if (diffs.size() >= 2 && diffs.back() > diffs.front() * 1.5 && diffs.back() > 1e-9) {
    throw std::runtime_error("loop_at_infinity: Hamiltonians do not converge along the radii");
  }
  if (diffs.size() >= 2 && diffs.back() > 0.0) {
    const std::size_t last = rSeq.size() - 1;
    const double h_prev = rLimit - rSeq[last - 1];
    const double h_pprev = rLimit - rSeq[last - 2];
    if (diffs[diffs.size() - 2] > 0.0 && h_pprev > h_prev) {
      out.convergence_order =
          std::log(diffs[diffs.size() - 2] / diffs.back()) / std::log(h_pprev / h_prev);
    }
  }

  // Richardson extrapolation at order two from the last two radii.
  const std::size_t last = rSeq.size() - 1;
  const double h1 = rLimit - rSeq[last - 1];
  const double h2 = rLimit - rSeq[last];
  out.limit =
      (h1 * h1 * out.samples[last] - h2 * h2 * out.samples[last - 1]) / (h1 * h1 - h2 * h2);
  return out;
}

}  // namespace contactgeo
