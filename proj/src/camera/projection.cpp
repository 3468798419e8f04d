#include "racesim/camera/projection.hpp"

namespace racesim {

std::optional<PixelPoint> project_point(const Eigen::Vector3d& p_world,
                                        const Pose& camera_pose_world, const CameraModel& cam) {
  const Eigen::Vector3d p_cam = camera_pose_world.inverse_transform(p_world);
  if (p_cam.z() <= kDepthEpsilon) return std::nullopt;
  PixelPoint px;
  px.u = cam.cx + cam.fx * p_cam.x() / p_cam.z();
  px.v = cam.cy + cam.fy * p_cam.y() / p_cam.z();
  px.depth = p_cam.z();
  return px;
}

std::optional<std::array<PixelPoint, 4>> project_gate(const Gate& gate, const Pose& drone_pose,
                                                      const CameraModel& cam) {
  const Pose cam_pose = camera_pose_world(drone_pose, cam);
  std::array<PixelPoint, 4> out;
  for (int k = 0; k < 4; ++k) {
    const auto px = project_point(gate.corners[k], cam_pose, cam);
    if (!px) return std::nullopt;
    out[k] = *px;
  }
  return out;
}

bool gate_visible(const Gate& gate, const Pose& drone_pose, const CameraModel& cam, double eval_w,
                  double eval_h) {
  const auto corners = project_gate(gate, drone_pose, cam);
  if (!corners) return false;
  for (const auto& px : *corners) {
    if (std::abs(px.u - cam.cx) > 0.5 * eval_w) return false;
    if (std::abs(px.v - cam.cy) > 0.5 * eval_h) return false;
  }
  return true;
}

}  // namespace racesim
