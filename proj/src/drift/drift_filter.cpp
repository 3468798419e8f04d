#include "racesim/drift/drift_filter.hpp"

#include <Eigen/Dense>

namespace racesim {

DriftState predict(const DriftState& state, double dt, const KfConfig& cfg) {
  Matrix6d f = Matrix6d::Identity();
  f.topRightCorner<3, 3>() = dt * Eigen::Matrix3d::Identity();

  Matrix6d q = Matrix6d::Zero();
  q.topLeftCorner<3, 3>() = cfg.sigma_p * Eigen::Matrix3d::Identity();
  q.bottomRightCorner<3, 3>() = cfg.sigma_v * Eigen::Matrix3d::Identity();

  DriftState out = state;
  out.p_d = state.p_d + dt * state.v_d;
  out.v_d = state.v_d;
  out.P = f * state.P * f.transpose() + q;
  out.P = 0.5 * (out.P + out.P.transpose().eval());
  return out;
}

DriftState update(const DriftState& state, const Eigen::Vector3d& z,
                  const Eigen::Vector3d& p_vio, const MeasurementUncertainty& unc,
                  const KfConfig& cfg) {
  using Matrix36 = Eigen::Matrix<double, 3, 6>;
  Matrix36 h = Matrix36::Zero();
  h.leftCols<3>() = Eigen::Matrix3d::Identity();

  const Eigen::Matrix3d r = cfg.lambda_r * unc.sigma.cwiseAbs2().asDiagonal();

  const Eigen::Vector3d y = z - p_vio;
  const Eigen::Vector3d innovation = y - state.p_d;

  const Eigen::Matrix3d s = h * state.P * h.transpose() + r;
  const Eigen::Matrix<double, 6, 3> k = state.P * h.transpose() * s.ldlt().solve(
                                            Eigen::Matrix3d::Identity());

  const Vector6d dx = k * innovation;
  DriftState out = state;
  out.p_d = state.p_d + dx.head<3>();
  out.v_d = state.v_d + dx.tail<3>();
  out.P = (Matrix6d::Identity() - k * h) * state.P;
  out.P = 0.5 * (out.P + out.P.transpose().eval());
  return out;
}

DroneState correct_state(const DroneState& vio_state, const DriftState& drift) {
  DroneState out = vio_state;
  out.position = vio_state.position + drift.p_d;
  return out;
}

double align_initial_heading(const Pose& vio_pose, const Eigen::Quaterniond& gate_pnp_rotation,
                             const CameraModel& cam) {
  // Gate-derived body orientation: camera->world composed with body->camera.
  const Eigen::Quaterniond body_from_gate =
      gate_pnp_rotation * cam.body_to_camera.orientation.conjugate();
  return wrap_angle(quat_to_yaw(body_from_gate) - quat_to_yaw(vio_pose.orientation));
}

}  // namespace racesim
