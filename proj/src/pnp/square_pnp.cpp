#include "racesim/pnp/square_pnp.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <vector>

#include "racesim/camera/projection.hpp"

namespace racesim {

namespace {

struct PlaneFrame {
  Eigen::Matrix3d plane_to_world;            // columns: in-plane x, in-plane y, normal
  std::array<Eigen::Vector2d, 4> model_pts;  // corners in plane coordinates
};

PlaneFrame gate_plane_frame(const Gate& gate) {
  PlaneFrame f;
  const Eigen::Vector3d ex = (gate.corners[1] - gate.corners[0]).normalized();
  Eigen::Vector3d ey = gate.corners[0] - gate.corners[3];
  ey = (ey - ey.dot(ex) * ex).normalized();
  f.plane_to_world.col(0) = ex;
  f.plane_to_world.col(1) = ey;
  f.plane_to_world.col(2) = ex.cross(ey);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector3d d = gate.corners[k] - gate.center;
    f.model_pts[k] = {d.dot(ex), d.dot(ey)};
  }
  return f;
}

// Similarity normalization (Hartley): centroid to origin, mean distance sqrt(2).
Eigen::Matrix3d normalizing_similarity(const std::array<Eigen::Vector2d, 4>& pts) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : pts) c += p;
  c /= 4.0;
  double mean_dist = 0.0;
  for (const auto& p : pts) mean_dist += (p - c).norm();
  mean_dist /= 4.0;
  const double s = mean_dist > 1e-300 ? std::sqrt(2.0) / mean_dist : 1.0;
  Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
  t(0, 0) = s;
  t(1, 1) = s;
  t(0, 2) = -s * c.x();
  t(1, 2) = -s * c.y();
  return t;
}

void check_not_collinear(const std::array<Eigen::Vector2d, 4>& px) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : px) c += p;
  c /= 4.0;
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : px) cov += (p - c) * (p - c).transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  if (std::sqrt(std::max(0.0, es.eigenvalues()(0))) < 1e-8)
    throw DegenerateGeometryError("pnp: image points are collinear");
}

// DLT homography from plane coordinates to normalized image coordinates.
Eigen::Matrix3d estimate_homography(const std::array<Eigen::Vector2d, 4>& model,
                                    const std::array<Eigen::Vector2d, 4>& image) {
  const Eigen::Matrix3d tm = normalizing_similarity(model);
  const Eigen::Matrix3d ti = normalizing_similarity(image);

  Eigen::Matrix<double, 8, 9> a;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector3d m = tm * Eigen::Vector3d(model[k].x(), model[k].y(), 1.0);
    const Eigen::Vector3d q = ti * Eigen::Vector3d(image[k].x(), image[k].y(), 1.0);
    const double x = m.x(), y = m.y(), u = q.x(), v = q.y();
    a.row(2 * k) << x, y, 1, 0, 0, 0, -u * x, -u * y, -u;
    a.row(2 * k + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y, -v;
  }

  const Eigen::JacobiSVD<Eigen::Matrix<double, 8, 9>> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(7) / sv(0) < 1e-12)
    throw DegenerateGeometryError("pnp: homography system is rank-deficient");

  const Eigen::Matrix<double, 9, 1> h = svd.matrixV().col(8);
  Eigen::Matrix3d hn;
  hn << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), h(8);
  return ti.inverse() * hn * tm;
}

// Rotation candidates from the homography's value and Jacobian at the plane
// origin. Returns the two plane->camera rotations.
std::array<Eigen::Matrix3d, 2> decompose_rotations(const Eigen::Matrix2d& jac,
                                                   const Eigen::Vector2d& v) {
  const Eigen::Vector3d ray(v.x(), v.y(), 1.0);
  const Eigen::Matrix3d rv =
      Eigen::Quaterniond::FromTwoVectors(ray, Eigen::Vector3d::UnitZ()).toRotationMatrix();

  const Eigen::Matrix2d m = rv.topLeftCorner<2, 2>() * jac;
  const Eigen::Matrix2d mtm = m.transpose() * m;
  const double tr = mtm.trace();
  const double det = mtm.determinant();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double x = 2.0 / (tr + disc);  // smaller root of det*x^2 - tr*x + 1
  if (!(x > 0.0) || !std::isfinite(x))
    throw DegenerateGeometryError("pnp: rotation decomposition failed");
  const double d = std::sqrt(x);

  const Eigen::Matrix2d rtilde = d * m;
  double b1 = std::sqrt(std::max(0.0, 1.0 - x * mtm(0, 0)));
  double b2 = std::sqrt(std::max(0.0, 1.0 - x * mtm(1, 1)));
  if (mtm(0, 1) > 0.0) b2 = -b2;  // enforce b1*b2 = -x * (M^T M)_01

  std::array<Eigen::Matrix3d, 2> rotations;
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    Eigen::Matrix3d rp;
    rp.col(0) << rtilde(0, 0), rtilde(1, 0), sign * b1;
    rp.col(1) << rtilde(0, 1), rtilde(1, 1), sign * b2;
    rp.col(2) = rp.col(0).cross(rp.col(1));
    rotations[s] = rv.transpose() * rp;
  }
  return rotations;
}

// Least-squares translation for a fixed rotation, over all 4 correspondences
// in normalized image coordinates.
Eigen::Vector3d solve_translation(const Eigen::Matrix3d& r_plane_to_cam,
                                  const std::array<Eigen::Vector2d, 4>& model,
                                  const std::array<Eigen::Vector2d, 4>& image) {
  Eigen::Matrix<double, 8, 3> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector3d y = r_plane_to_cam * Eigen::Vector3d(model[k].x(), model[k].y(), 0.0);
    const double qx = image[k].x(), qy = image[k].y();
    a.row(2 * k) << 1, 0, -qx;
    a.row(2 * k + 1) << 0, 1, -qy;
    b(2 * k) = qx * y.z() - y.x();
    b(2 * k + 1) = qy * y.z() - y.y();
  }
  return (a.transpose() * a).ldlt().solve(a.transpose() * b);
}

double reprojection_rms(const PnpSolution& sol, const Gate& gate, const Detection& det,
                        const CameraModel& cam) {
  const Pose cam_pose{sol.camera_position_world, sol.camera_rotation_world};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto px = project_point(gate.corners[k], cam_pose, cam);
    if (!px) return std::numeric_limits<double>::infinity();
    sum += (px->uv() - det.keypoints[k].point()).squaredNorm();
  }
  return std::sqrt(sum / 4.0);
}

}  // namespace

PnpCandidates solve_square_pnp_candidates(const Gate& gate, const Detection& det,
                                          const CameraModel& cam) {
  std::array<Eigen::Vector2d, 4> pixel_pts;
  for (int k = 0; k < 4; ++k) {
    if (!det.keypoints[k].visible)
      throw DegenerateGeometryError("pnp: keypoint " + std::to_string(k) + " not visible");
    pixel_pts[k] = det.keypoints[k].point();
  }
  check_not_collinear(pixel_pts);

  std::array<Eigen::Vector2d, 4> image_pts;  // normalized camera coordinates
  for (int k = 0; k < 4; ++k) {
    image_pts[k] = {(pixel_pts[k].x() - cam.cx) / cam.fx, (pixel_pts[k].y() - cam.cy) / cam.fy};
  }

  const PlaneFrame plane = gate_plane_frame(gate);
  Eigen::Matrix3d h = estimate_homography(plane.model_pts, image_pts);

  // Fix the homography sign so every corner has positive projective depth.
  int positive = 0;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector3d w =
        h * Eigen::Vector3d(plane.model_pts[k].x(), plane.model_pts[k].y(), 1.0);
    if (w.z() > 0.0) ++positive;
  }
  if (positive == 0) h = -h;
  else if (positive != 4)
    throw DegenerateGeometryError("pnp: quad crosses the principal plane");
  if (!(h(2, 2) > 0.0))
    throw DegenerateGeometryError("pnp: gate center at or behind the principal plane");

  const Eigen::Vector2d v(h(0, 2) / h(2, 2), h(1, 2) / h(2, 2));
  Eigen::Matrix2d jac;
  jac(0, 0) = (h(0, 0) - v.x() * h(2, 0)) / h(2, 2);
  jac(0, 1) = (h(0, 1) - v.x() * h(2, 1)) / h(2, 2);
  jac(1, 0) = (h(1, 0) - v.y() * h(2, 0)) / h(2, 2);
  jac(1, 1) = (h(1, 1) - v.y() * h(2, 1)) / h(2, 2);

  const auto rotations = decompose_rotations(jac, v);

  std::array<PnpSolution, 2> sols;
  for (int s = 0; s < 2; ++s) {
    const Eigen::Matrix3d& r_pc = rotations[s];
    const Eigen::Vector3d t = solve_translation(r_pc, plane.model_pts, image_pts);
    const Eigen::Matrix3d r_cw = r_pc * plane.plane_to_world.transpose();  // world->camera
    PnpSolution sol;
    sol.camera_position_world = gate.center - r_cw.transpose() * t;
    sol.camera_rotation_world = Eigen::Quaterniond(r_cw.transpose()).normalized();
    sol.reprojection_rms = reprojection_rms(sol, gate, det, cam);
    sols[s] = sol;
  }

  if (!std::isfinite(sols[0].reprojection_rms) && !std::isfinite(sols[1].reprojection_rms))
    throw DegenerateGeometryError("pnp: both candidates project behind the camera");

  PnpCandidates out;
  const int best = sols[0].reprojection_rms <= sols[1].reprojection_rms ? 0 : 1;
  out.best = sols[best];
  out.rejected = sols[1 - best];
  return out;
}

PnpSolution solve_square_pnp(const Gate& gate, const Detection& det, const CameraModel& cam) {
  return solve_square_pnp_candidates(gate, det, cam).best;
}

MeasurementUncertainty estimate_uncertainty(const Gate& gate, const Detection& det,
                                            const CameraModel& cam, int n_perturb,
                                            double pixel_sigma, std::uint64_t seed) {
  solve_square_pnp(gate, det, cam);  // propagate degeneracy of the nominal solve

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, pixel_sigma);

  std::vector<Eigen::Vector3d> samples;
  samples.reserve(n_perturb);
  for (int i = 0; i < n_perturb; ++i) {
    Detection perturbed = det;
    for (auto& kp : perturbed.keypoints) {
      kp.x += noise(rng);
      kp.y += noise(rng);
    }
    try {
      samples.push_back(solve_square_pnp(gate, perturbed, cam).camera_position_world);
    } catch (const DegenerateGeometryError&) {
      // skip failed samples
    }
  }

  if (static_cast<int>(samples.size()) < 30)
    throw UncertaintyUnavailableError("uncertainty: only " + std::to_string(samples.size()) +
                                      " of " + std::to_string(n_perturb) + " samples solved");

  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  Eigen::Vector3d var = Eigen::Vector3d::Zero();
  for (const auto& s : samples) var += (s - mean).cwiseAbs2();
  var /= static_cast<double>(samples.size() - 1);

  MeasurementUncertainty unc;
  unc.sigma = var.cwiseSqrt().cwiseMax(1e-9);
  return unc;
}

}  // namespace racesim
