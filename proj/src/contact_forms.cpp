#include "contactgeo/contact_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace contactgeo {

SpherePoint::SpherePoint(Vec coords, double tol) : c_(std::move(coords)) {
  require_unit(c_, tol, "SpherePoint");
}

SpherePoint SpherePoint::project(Vec coords) {
  const double n = coords.norm();
  if (n < 1e-14) throw std::invalid_argument("SpherePoint::project: zero vector");
  return SpherePoint(coords / n);
}

ContactFormSpec::ContactFormSpec(Mat generator, double tol) : a_(std::move(generator)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) {
    throw std::invalid_argument("ContactFormSpec: generator not square");
  }
  const double anti = max_abs(Mat(a_.transpose() + a_));
  if (anti > tol * std::max(1.0, max_abs(a_))) {
    throw std::invalid_argument("ContactFormSpec: generator not antisymmetric, |A^t+A| = " +
                                std::to_string(anti));
  }
}

ContactFormSpec complex_tangencies(const ComplexStructure& j) {
  return ContactFormSpec(j.matrix());
}

TangentFrame build_tangent_frame(const SpherePoint& p) {
  return TangentFrame{p, householder_frame(p.coords())};
}

namespace {

void check_dim(const ContactFormSpec& form, const SpherePoint& p) {
  if (form.dim() != p.dim()) {
    throw std::invalid_argument("contact form / point dimension mismatch");
  }
}

void check_tangent(const SpherePoint& p, const Vec& v, const char* what) {
  if (v.size() != p.coords().size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
  const double off = std::abs(p.coords().dot(v));
  if (off > 1e-8 * std::max(1.0, v.norm())) {
    throw std::invalid_argument(std::string(what) + ": vector not tangent, <p,v> = " +
                                std::to_string(off));
  }
}

// Left-hand side shared by the Reeb and Hamiltonian solves: row 0 is
// alpha on the frame, the remaining rows are d alpha(., u_b) on the frame.
Mat contact_system(const ContactFormSpec& form, const SpherePoint& p, const Mat& frame) {
  const int d = form.dim();
  Mat sys(d, d - 1);
  sys.row(0) = p.coords().transpose() * form.generator() * frame;
  const Mat s = frame.transpose() * form.generator() * frame;
  sys.bottomRows(d - 1) = -2.0 * s;
  return sys;
}

}  // namespace

double evaluate_form(const ContactFormSpec& form, const SpherePoint& p, const Vec& v) {
  check_dim(form, p);
  if (v.size() != p.coords().size()) {
    throw std::invalid_argument("evaluate_form: dimension mismatch");
  }
  return p.coords().dot(form.generator() * v);
}

double two_form(const ContactFormSpec& form, const SpherePoint& p, const Vec& u, const Vec& v) {
  check_dim(form, p);
  check_tangent(p, u, "two_form(u)");
  check_tangent(p, v, "two_form(v)");
  return 2.0 * u.dot(form.generator() * v);
}

double contact_nondegeneracy(const ContactFormSpec& form, const SpherePoint& p) {
  check_dim(form, p);
  const int d = form.dim();
  if (max_abs(form.generator()) < 1e-14) {
    throw std::invalid_argument("contact_nondegeneracy: zero generator");
  }
  if ((d - 2) % 2 != 0) {
    throw std::invalid_argument("contact_nondegeneracy: odd kernel dimension");
  }
  Vec q = form.generator() * p.coords();
  const double nq = q.norm();
  if (nq < 1e-12) return 0.0;  // the form vanishes at p
  const Mat xi = frame_orthogonal_to(p.coords(), Vec(q / nq));
  const Mat m = 2.0 * xi.transpose() * form.generator() * xi;
  return std::abs(pfaffian(m));
}

Vec reeb_field(const ContactFormSpec& form, const SpherePoint& p) {
  check_dim(form, p);
  const int d = form.dim();
  const Mat frame = householder_frame(p.coords());
  const Mat sys = contact_system(form, p, frame);
  Vec rhs = Vec::Zero(d);
  rhs[0] = 1.0;
  const Vec c = sys.colPivHouseholderQr().solve(rhs);
  const double residual = (sys * c - rhs).cwiseAbs().maxCoeff();
  if (!c.allFinite() || residual > 1e-8) {
    throw std::runtime_error("reeb_field: singular system (non-contact configuration), residual = " +
                             std::to_string(residual));
  }
  return frame * c;
}

double reeb_residual(const ContactFormSpec& form, const SpherePoint& p, const Vec& r) {
  const Mat frame = householder_frame(p.coords());
  double worst = std::abs(evaluate_form(form, p, r) - 1.0);
  worst = std::max(worst, std::abs(p.coords().dot(r)));
  const Vec dalpha = 2.0 * frame.transpose() * form.generator().transpose() * r;
  worst = std::max(worst, max_abs(dalpha));
  return worst;
}

Vec tangential_gradient(const HamiltonianField& h, const SpherePoint& p, double step) {
  const int d = p.dim();
  Vec g(d);
  if (h.gradient) {
    g = h.gradient(p.coords());
  } else {
    Vec plus = p.coords(), minus = p.coords();
    for (int i = 0; i < d; ++i) {
      plus[i] += step;
      minus[i] -= step;
      g[i] = (h.value(plus / plus.norm()) - h.value(minus / minus.norm())) / (2.0 * step);
      plus[i] = p.coords()[i];
      minus[i] = p.coords()[i];
    }
  }
  return g - p.coords().dot(g) * p.coords();
}

Vec hamiltonian_vector_field(const ContactFormSpec& form, const HamiltonianField& h,
                             const SpherePoint& p) {
  check_dim(form, p);
  const int d = form.dim();
  const Mat frame = householder_frame(p.coords());
  const Mat sys = contact_system(form, p, frame);
  const Vec grad = tangential_gradient(h, p);
  const Vec reeb = reeb_field(form, p);
  const double h0 = h.value(p.coords());
  const double dh_reeb = grad.dot(reeb);
  Vec rhs(d);
  rhs[0] = h0;
  for (int b = 0; b < d - 1; ++b) {
    const Vec ub = frame.col(b);
    rhs[1 + b] = -grad.dot(ub) + dh_reeb * evaluate_form(form, p, ub);
  }
  const Vec c = sys.colPivHouseholderQr().solve(rhs);
  const double scale = std::max({1.0, std::abs(h0), grad.norm()});
  const double residual = (sys * c - rhs).cwiseAbs().maxCoeff();
  if (!c.allFinite() || residual > 1e-7 * scale) {
    throw std::runtime_error("hamiltonian_vector_field: singular solve, residual = " +
                             std::to_string(residual));
  }
  return frame * c;
}

HamiltonianField TimeHamiltonian::at(double t) const {
  HamiltonianField h;
  h.value = [this, t](const Vec& p) { return value(p, t); };
  if (gradient) {
    h.gradient = [this, t](const Vec& p) { return gradient(p, t); };
  }
  return h;
}

SpherePoint hamiltonian_flow(const ContactFormSpec& form, const TimeHamiltonian& h,
                             const SpherePoint& p0, double t, double step) {
  if (step <= 0.0) throw std::invalid_argument("hamiltonian_flow: step must be positive");
  if (t == 0.0) return p0;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step)));
  const double dt = t / n;
  auto field = [&](const Vec& p, double s) {
    return hamiltonian_vector_field(form, h.at(s), SpherePoint::project(p));
  };
  Vec p = p0.coords();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec k1 = field(p, s);
    const Vec k2 = field(p + 0.5 * dt * k1, s + 0.5 * dt);
    const Vec k3 = field(p + 0.5 * dt * k2, s + 0.5 * dt);
    const Vec k4 = field(p + dt * k3, s + dt);
    p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p /= p.norm();
    s += dt;
  }
  return SpherePoint(p, 1e-9);
}

}  // namespace contactgeo
