#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "racesim/core/angles.hpp"

namespace racesim {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

/// Rigid transform: world-frame position plus a unit quaternion (Hamilton,
/// scalar-first) that rotates body-frame vectors into the parent frame.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  Pose() = default;
  Pose(const Eigen::Vector3d& p, const Eigen::Quaterniond& q)
      : position(p), orientation(q.normalized()) {}

  /// this ∘ other: `other` is expressed in this pose's frame.
  Pose compose(const Pose& other) const {
    return {position + orientation * other.position, orientation * other.orientation};
  }

  Pose inverse() const {
    const Eigen::Quaterniond qi = orientation.conjugate();
    return {qi * (-position), qi};
  }

  /// Maps a point from this pose's local frame into the parent frame.
  Eigen::Vector3d transform(const Eigen::Vector3d& p_local) const {
    return position + orientation * p_local;
  }

  /// Maps a parent-frame point into this pose's local frame.
  Eigen::Vector3d inverse_transform(const Eigen::Vector3d& p_parent) const {
    return orientation.conjugate() * (p_parent - position);
  }
};

/// Full kinematic state of the vehicle; used for both simulated truth and
/// estimates. body_rate is expressed in the body frame.
struct DroneState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d body_rate = Eigen::Vector3d::Zero();
  double timestamp = 0.0;

  Pose pose() const { return {position, orientation}; }
};

/// One square racing gate. Corners are world-frame inner corners in the fixed
/// order TL, TR, BR, BL as seen from the gate's front face; the front-face
/// normal points along the intended direction of travel through the gate.
struct Gate {
  int id = 0;
  std::array<Eigen::Vector3d, 4> corners{};
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double side_length = 0.0;

  /// Unit normal of the front face.
  Eigen::Vector3d facing() const {
    const Eigen::Vector3d n = (corners[3] - corners[0]).cross(corners[1] - corners[0]);
    return n.normalized();
  }

  /// Builds an upright square gate from center, facing yaw and side length.
  static Gate from_center_yaw(int id, const Eigen::Vector3d& center, double yaw_rad,
                              double side_length) {
    const Eigen::Vector3d n(std::cos(yaw_rad), std::sin(yaw_rad), 0.0);
    const Eigen::Vector3d up = Eigen::Vector3d::UnitZ();
    const Eigen::Vector3d right = up.cross(n);
    const double h = 0.5 * side_length;
    Gate g;
    g.id = id;
    g.center = center;
    g.side_length = side_length;
    g.corners = {center - h * right + h * up, center + h * right + h * up,
                 center + h * right - h * up, center - h * right - h * up};
    return g;
  }

  /// Checks the square-gate invariants: coplanarity, equal sides, centered.
  void validate() const;
};

/// Ordered gate set plus the traversal order flown in a race (gate ids may
/// repeat across laps).
struct GateMap {
  std::vector<Gate> gates;
  std::vector<int> traversal_order;

  const Gate& gate_by_id(int id) const;
  bool has_gate(int id) const;
  void validate() const;
};

/// Rectified pinhole camera. body_to_camera is the camera's pose expressed in
/// the body frame (orientation rotates camera-frame vectors into the body
/// frame). Camera frame: x right, y down, z forward (optical axis).
struct CameraModel {
  double fx = 205.0;
  double fy = 205.0;
  double cx = 410.0;
  double cy = 313.0;
  int width = 820;
  int height = 626;
  Pose body_to_camera = forward_mount();

  /// Nominal forward-looking mount: optical axis along body x, image right
  /// along body -y, image down along body -z. pitch_up_rad tilts the optical
  /// axis upward about body y.
  static Pose forward_mount(double pitch_up_rad = 0.0,
                            const Eigen::Vector3d& position = Eigen::Vector3d::Zero()) {
    Eigen::Matrix3d cam_in_body;
    cam_in_body.col(0) = -Eigen::Vector3d::UnitY();
    cam_in_body.col(1) = -Eigen::Vector3d::UnitZ();
    cam_in_body.col(2) = Eigen::Vector3d::UnitX();
    const Eigen::Quaterniond tilt(Eigen::AngleAxisd(-pitch_up_rad, Eigen::Vector3d::UnitY()));
    return {position, tilt * Eigen::Quaterniond(cam_in_body)};
  }

  void validate() const;
};

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  bool visible = true;

  Eigen::Vector2d point() const { return {x, y}; }
};

/// One detected gate in an image: bounding box, 4 corner keypoints in the
/// gate-fixed TL, TR, BR, BL order, and a confidence score.
struct Detection {
  int gate_class = 0;
  Eigen::Vector2d bbox_center = Eigen::Vector2d::Zero();
  double bbox_w = 0.0;
  double bbox_h = 0.0;
  std::array<Keypoint, 4> keypoints{};
  double confidence = 1.0;

  double area() const { return bbox_w * bbox_h; }
};

}  // namespace racesim
