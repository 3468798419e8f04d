#pragma once

#include "racesim/core/types.hpp"
#include "racesim/pnp/square_pnp.hpp"

namespace racesim {

/// Raised by the one-time heading alignment when no usable first-gate
/// detection is available.
struct AlignmentUnavailableError : Error {
  using Error::Error;
};

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// State of the drift estimator: position drift, velocity drift and their
/// joint covariance. The drift is defined as truth-minus-odometry, so the
/// corrected position is odometry position plus p_d.
struct DriftState {
  Eigen::Vector3d p_d = Eigen::Vector3d::Zero();
  Eigen::Vector3d v_d = Eigen::Vector3d::Zero();
  Matrix6d P = initial_covariance();
  double last_update = 0.0;

  static Matrix6d initial_covariance() {
    Matrix6d p = Matrix6d::Zero();
    p.topLeftCorner<3, 3>() = Eigen::Matrix3d::Identity();          // 1 m^2
    p.bottomRightCorner<3, 3>() = 0.25 * Eigen::Matrix3d::Identity();  // (0.5 m/s)^2
    return p;
  }

  Vector6d vector() const {
    Vector6d x;
    x << p_d, v_d;
    return x;
  }
};

/// Process/measurement noise settings of the drift filter.
struct KfConfig {
  double sigma_p = 0.1;   // process noise, position block
  double sigma_v = 0.2;   // process noise, velocity block
  double lambda_r = 1.0;  // measurement-noise multiplier

  void validate() const {
    if (sigma_p <= 0.0 || sigma_v <= 0.0 || lambda_r <= 0.0)
      throw ConfigError("kalman: sigma_p, sigma_v, lambda_r must be > 0");
  }
};

/// Constant-velocity prediction: x <- F x, P <- F P F^T + Q with
/// F = [[I, dt I], [0, I]] and Q = diag(sigma_p I, sigma_v I).
DriftState predict(const DriftState& state, double dt, const KfConfig& cfg);

/// Measurement update from one accepted gate detection. z is the PnP camera
/// position mapped to the body, p_vio the odometry position at the same time;
/// the measurement of the drift is y = z - p_vio. R = lambda_r * diag(sigma^2)
/// from the perturbation-based uncertainty.
DriftState update(const DriftState& state, const Eigen::Vector3d& z,
                  const Eigen::Vector3d& p_vio, const MeasurementUncertainty& unc,
                  const KfConfig& cfg);

/// Applies the estimated translational drift to the odometry output. Only the
/// position changes; orientation, velocity and body rate pass through.
DroneState correct_state(const DroneState& vio_state, const DriftState& drift);

/// One-time yaw offset between the gate-derived body orientation and the
/// odometry orientation. Subsequent odometry orientations are pre-rotated
/// about world Z by the returned offset.
double align_initial_heading(const Pose& vio_pose, const Eigen::Quaterniond& gate_pnp_rotation,
                             const CameraModel& cam);

}  // namespace racesim
