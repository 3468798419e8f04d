#pragma once

#include <utility>
#include <vector>

#include "racesim/camera/projection.hpp"
#include "racesim/core/types.hpp"

namespace racesim {

/// Result of matching detections to map gates. Indices refer to the input
/// lists; every detection and gate index appears at most once.
struct AssignmentResult {
  std::vector<std::pair<int, int>> pairs;  // (detection_index, gate_index)
  double total_cost = 0.0;                 // px^2, sum of pair costs
  std::vector<int> unmatched_detections;
};

/// Sum of squared pixel distances between the projected gate corners and the
/// detection keypoints, index-aligned. Returns kForbiddenCost when any map
/// corner lies behind the camera.
double reprojection_cost(const Gate& gate, const Detection& det, const Pose& drone_pose,
                         const CameraModel& cam);

/// Minimum-total-cost one-to-one matching between detections and map gates.
/// Pairs whose cost exceeds gating_cost (or is infeasible) are dropped and
/// their detections reported as unmatched.
AssignmentResult associate(const std::vector<Detection>& detections, const GateMap& map,
                           const Pose& drone_pose, const CameraModel& cam,
                           double gating_cost = 1.0e5);

}  // namespace racesim
