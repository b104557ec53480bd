#include "contactgeo/degree.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace contactgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

ComplexStructure h_extend(const AlmostContactPoint& a) {
  const int k = static_cast<int>(a.v.size());
  require_unit(a.v, 1e-9, "h_extend");
  if (a.j.rows() != k - 1 || a.j.cols() != k - 1) {
    throw std::invalid_argument("h_extend: j must act on the complement of v");
  }
  const Mat w = householder_frame(a.v);  // k x (k-1)
  // Orthogonal change of basis [w | v | e_t] on R^{k+1}.
  Mat basis = Mat::Zero(k + 1, k + 1);
  basis.block(0, 0, k, k - 1) = w;
  basis.block(0, k - 1, k, 1) = a.v;
  basis(k, k) = 1.0;
  Mat blocks = Mat::Zero(k + 1, k + 1);
  blocks.block(0, 0, k - 1, k - 1) = a.j;
  blocks(k, k - 1) = 1.0;   // v -> e_t
  blocks(k - 1, k) = -1.0;  // e_t -> -v
  return ComplexStructure(basis * blocks * basis.transpose());
}

ConjugationPath conjugation_path(const QuaternionicTriple& t, double theta, double phi) {
  const int d = t.dim();
  const Mat jtheta = std::cos(theta) * t.J.matrix() + std::sin(theta) * t.K.matrix();
  Mat p = std::cos(phi / 2.0) * t.I.matrix() + std::sin(phi / 2.0) * jtheta;
  const double orth = max_abs(Mat(p.transpose() * p - Mat::Identity(d, d)));
  if (orth > 1e-12) {
    throw std::runtime_error("conjugation_path: P not orthogonal (quaternion convention bug), "
                             "|P^tP - id| = " + std::to_string(orth));
  }
  Mat itilde = p.transpose() * t.I.matrix() * p;
  const Mat expected = std::cos(phi) * t.I.matrix() + std::sin(phi) * jtheta;
  const double dev = max_abs(Mat(itilde - expected));
  if (dev > 1e-12) {
    throw std::runtime_error("conjugation_path: Itilde formula violated by " + std::to_string(dev));
  }
  return ConjugationPath{std::move(p), ComplexStructure(std::move(itilde))};
}

int sphere_degree(const QuaternionicTriple& t, int resolution) {
  if (resolution < 64) throw std::invalid_argument("sphere_degree: resolution must be >= 64");
  const int d = t.dim();
  const Mat jinv = -t.J.matrix();  // J^2 = -id
  std::vector<Mat> loop;
  loop.reserve(resolution + 1);
  for (int s = 0; s <= resolution; ++s) {
    const double theta = 2.0 * kPi * s / resolution;
    Mat u = conjugation_path(t, theta, kPi).p * jinv;
    const double comm = max_abs(Mat(u * t.I.matrix() - t.I.matrix() * u));
    const double unitary = max_abs(Mat(u.transpose() * u - Mat::Identity(d, d)));
    if (comm > 1e-10 || unitary > 1e-10) {
      throw std::runtime_error("sphere_degree: loop is not I-unitary, commutator = " +
                               std::to_string(comm));
    }
    loop.push_back(std::move(u));
  }
  return det_winding(loop, t.I);
}

QuaternionicFrame quaternionic_frame(const QuaternionicTriple& t, const SpherePoint& q) {
  const int d = t.dim();
  if (q.dim() != d) throw std::invalid_argument("quaternionic_frame: dimension mismatch");
  const Mat& i = t.I.matrix();
  const Mat& j = t.J.matrix();
  const Mat& k = t.K.matrix();
  const Vec iq = i * q.coords();
  const Vec jq = j * q.coords();
  const Vec kq = k * q.coords();

  Mat eta(d, d - 4);
  int found = 0;
  for (int cand = 0; cand < d && found < d - 4; ++cand) {
    Vec r = Vec::Zero(d);
    r[cand] = 1.0;
    r -= q.coords().dot(r) * q.coords();
    r -= iq.dot(r) * iq;
    r -= jq.dot(r) * jq;
    r -= kq.dot(r) * kq;
    for (int c = 0; c < found; ++c) r -= eta.col(c).dot(r) * eta.col(c);
    const double n = r.norm();
    if (n < 1e-6) continue;
    // One basis vector pins the whole quaternionic quadruple.
    eta.col(found) = r / n;
    eta.col(found + 1) = i * eta.col(found);
    eta.col(found + 2) = j * eta.col(found);
    eta.col(found + 3) = k * eta.col(found);
    found += 4;
  }
  if (found != d - 4) throw std::runtime_error("quaternionic_frame: basis construction failed");

  Mat tau_tilde(d, d - 1);
  tau_tilde.leftCols(d - 4) = eta;
  tau_tilde.col(d - 4) = -iq;
  tau_tilde.col(d - 3) = -jq;
  tau_tilde.col(d - 2) = -kq;
  return QuaternionicFrame{q, std::move(eta), std::move(tau_tilde)};
}

namespace {

// The evaluation map at one direction: coordinates of the coorienting
// vector (the Reeb field of alpha_e) and of the structure restricted to
// the contact hyperplane, followed by the h-extension.
Mat evaluate_direction(const Mat& ae, const QuaternionicFrame& frame) {
  const Vec reeb = -ae * frame.base.coords();
  AlmostContactPoint acp;
  acp.v = frame.tau_tilde.transpose() * reeb;
  const Mat coords = frame.tau_tilde.transpose() * ae * frame.tau_tilde;
  const Mat w = householder_frame(acp.v);
  acp.j = w.transpose() * coords * w;
  return h_extend(acp).matrix();
}

}  // namespace

StructureSphere evaluate_sphere_at_point(const LinearContactSphere& s,
                                         const QuaternionicFrame& frame, int gridTheta,
                                         int gridPhi) {
  if (gridTheta % 4 != 0 || gridPhi % 2 != 0 || gridTheta < 4 || gridPhi < 2) {
    throw std::invalid_argument(
        "evaluate_sphere_at_point: need gridTheta divisible by 4 and gridPhi even");
  }
  StructureSphere sphere;
  for (int i = 0; i <= gridTheta; ++i) sphere.thetas.push_back(2.0 * kPi * i / gridTheta);
  for (int j = 0; j <= gridPhi; ++j) sphere.phis.push_back(kPi * j / gridPhi);
  sphere.grid.resize(sphere.thetas.size());
  for (std::size_t i = 0; i < sphere.thetas.size(); ++i) {
    for (const double phi : sphere.phis) {
      const Mat ae =
          s.structure_at(SphereDirection::from_angles(sphere.thetas[i], phi)).matrix();
      sphere.grid[i].push_back(evaluate_direction(ae, frame));
    }
  }
  return sphere;
}

SphereDegreeResult structure_sphere_degree(const StructureSphere& sphere, int resolution) {
  const std::size_t nt = sphere.thetas.size();
  const std::size_t np = sphere.phis.size();
  if (nt < 5 || np < 3 || (nt - 1) % 4 != 0 || (np - 1) % 2 != 0) {
    throw std::invalid_argument("structure_sphere_degree: grid must contain the poles, the "
                                "equator and the quarter meridian");
  }
  const std::size_t equator = (np - 1) / 2;
  const Mat iprime = sphere.grid[0][equator];
  const Mat jprime = sphere.grid[(nt - 1) / 4][equator];
  const Mat kprime = sphere.grid[0][0];

  SphereDegreeResult out;
  const int d = static_cast<int>(iprime.rows());
  const Mat id = Mat::Identity(d, d);
  out.relation_residual = std::max({max_abs(Mat(iprime * iprime + id)),
                                    max_abs(Mat(jprime * jprime + id)),
                                    max_abs(Mat(kprime * kprime + id)),
                                    max_abs(Mat(iprime * jprime - kprime)),
                                    max_abs(Mat(iprime * jprime + jprime * iprime))});
  if (out.relation_residual > 1e-8) {
    throw std::runtime_error("structure_sphere_degree: recovered triple fails the quaternion "
                             "relations by " + std::to_string(out.relation_residual));
  }
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const SphereDirection e = SphereDirection::from_angles(sphere.thetas[i], sphere.phis[j]);
      const Mat model = e.e0 * iprime + e.e1 * jprime + e.e2 * kprime;
      out.linearity_residual =
          std::max(out.linearity_residual, max_abs(Mat(sphere.grid[i][j] - model)));
    }
  }
  const QuaternionicTriple recovered{d / 4, ComplexStructure(iprime), ComplexStructure(jprime),
                                     ComplexStructure(kprime)};
  out.degree = sphere_degree(recovered, resolution);
  return out;
}

ComplexStructure roundtrip_identity(const ComplexStructure& j, const QuaternionicFrame& frame) {
  const int d = j.dim();
  if (frame.base.dim() != d) throw std::invalid_argument("roundtrip_identity: dimension mismatch");
  const ContactFormSpec form = complex_tangencies(j);
  const Vec reeb = reeb_field(form, frame.base);
  AlmostContactPoint acp;
  acp.v = frame.tau_tilde.transpose() * reeb;
  const Mat coords = frame.tau_tilde.transpose() * j.matrix() * frame.tau_tilde;
  const Mat w = householder_frame(acp.v);
  acp.j = w.transpose() * coords * w;
  const Mat extended = h_extend(acp).matrix();
  // Identify R^{d-1} + <e_t> with the ambient space: tau-tilde spans the
  // tangent space at the base point and e_t goes to the radial direction.
  Mat basis(d, d);
  basis.leftCols(d - 1) = frame.tau_tilde;
  basis.col(d - 1) = frame.base.coords();
  return ComplexStructure(basis * extended * basis.transpose());
}

}  // namespace contactgeo
