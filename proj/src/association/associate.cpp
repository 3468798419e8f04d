#include "racesim/association/associate.hpp"

#include <algorithm>

#include "racesim/association/hungarian.hpp"

namespace racesim {

double reprojection_cost(const Gate& gate, const Detection& det, const Pose& drone_pose,
                         const CameraModel& cam) {
  const auto projected = project_gate(gate, drone_pose, cam);
  if (!projected) return kForbiddenCost;
  double cost = 0.0;
  for (int k = 0; k < 4; ++k) {
    cost += ((*projected)[k].uv() - det.keypoints[k].point()).squaredNorm();
  }
  return cost;
}

AssignmentResult associate(const std::vector<Detection>& detections, const GateMap& map,
                           const Pose& drone_pose, const CameraModel& cam, double gating_cost) {
  AssignmentResult result;
  const int m = static_cast<int>(detections.size());
  const int n = static_cast<int>(map.gates.size());
  if (m == 0) return result;
  if (n == 0) {
    for (int i = 0; i < m; ++i) result.unmatched_detections.push_back(i);
    return result;
  }

  std::vector<double> cost(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double c = reprojection_cost(map.gates[j], detections[i], drone_pose, cam);
      if (c > gating_cost) c = kForbiddenCost;
      cost[static_cast<size_t>(i) * n + j] = c;
    }
  }

  const std::vector<int> row_to_col = solve_assignment(cost, m, n);
  for (int i = 0; i < m; ++i) {
    const int j = row_to_col[i];
    if (j < 0) {
      result.unmatched_detections.push_back(i);
      continue;
    }
    result.pairs.emplace_back(i, j);
    result.total_cost += cost[static_cast<size_t>(i) * n + j];
  }
  return result;
}

}  // namespace racesim
