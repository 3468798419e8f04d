#pragma once

#include <array>
#include <optional>

#include "racesim/core/types.hpp"

namespace racesim {

/// Image-plane point with the camera-frame depth of the projected 3D point.
/// The depth is kept even when (u, v) falls outside the image bounds.
struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;

  Eigen::Vector2d uv() const { return {u, v}; }
};

/// Camera-frame z below which a point counts as behind the camera.
inline constexpr double kDepthEpsilon = 1e-6;

/// Pose of the camera in the world frame for a given body pose.
inline Pose camera_pose_world(const Pose& drone_pose, const CameraModel& cam) {
  return drone_pose.compose(cam.body_to_camera);
}

/// Projects a world point through the rectified pinhole model. Returns
/// nullopt when the point lies behind the camera (z <= kDepthEpsilon).
std::optional<PixelPoint> project_point(const Eigen::Vector3d& p_world,
                                        const Pose& camera_pose_world,
                                        const CameraModel& cam);

/// Projects the 4 gate corners in their fixed order, using the camera pose
/// derived from the drone pose and the camera extrinsics. Returns nullopt if
/// any corner is behind the camera.
std::optional<std::array<PixelPoint, 4>> project_gate(const Gate& gate, const Pose& drone_pose,
                                                      const CameraModel& cam);

/// True iff every gate corner projects in front of the camera and within the
/// centered evaluation window: |u - cx| <= eval_w/2 and |v - cy| <= eval_h/2.
bool gate_visible(const Gate& gate, const Pose& drone_pose, const CameraModel& cam,
                  double eval_w, double eval_h);

}  // namespace racesim
