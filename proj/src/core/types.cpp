#include "racesim/core/types.hpp"

#include <algorithm>
#include <unordered_set>

namespace racesim {

void Gate::validate() const {
  if (side_length <= 0.0) throw ConfigError("gate " + std::to_string(id) + ": side_length <= 0");

  // Coplanarity: all corners on the plane spanned at corner 0.
  const Eigen::Vector3d a = corners[1] - corners[0];
  const Eigen::Vector3d b = corners[3] - corners[0];
  const Eigen::Vector3d n = a.cross(b).normalized();
  for (const auto& c : corners) {
    if (std::abs(n.dot(c - corners[0])) > 1e-6)
      throw ConfigError("gate " + std::to_string(id) + ": corners not coplanar");
  }

  for (int k = 0; k < 4; ++k) {
    const double d = (corners[(k + 1) % 4] - corners[k]).norm();
    if (std::abs(d - side_length) > 1e-6)
      throw ConfigError("gate " + std::to_string(id) + ": side " + std::to_string(k) +
                        " length " + std::to_string(d) + " != side_length");
  }

  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& c : corners) mean += c;
  mean /= 4.0;
  if ((mean - center).norm() > 1e-9)
    throw ConfigError("gate " + std::to_string(id) + ": center is not the corner mean");
}

const Gate& GateMap::gate_by_id(int id) const {
  for (const auto& g : gates)
    if (g.id == id) return g;
  throw ConfigError("gate id " + std::to_string(id) + " not in map");
}

bool GateMap::has_gate(int id) const {
  return std::any_of(gates.begin(), gates.end(), [id](const Gate& g) { return g.id == id; });
}

void GateMap::validate() const {
  std::unordered_set<int> ids;
  for (const auto& g : gates) {
    g.validate();
    if (!ids.insert(g.id).second)
      throw ConfigError("duplicate gate id " + std::to_string(g.id));
  }
  for (int id : traversal_order)
    if (!ids.count(id))
      throw ConfigError("traversal_order references unknown gate id " + std::to_string(id));
}

void CameraModel::validate() const {
  if (fx <= 0.0 || fy <= 0.0) throw ConfigError("camera: fx, fy must be > 0");
  if (width <= 0 || height <= 0) throw ConfigError("camera: width, height must be > 0");
  if (cx <= 0.0 || cx >= width) throw ConfigError("camera: cx outside (0, width)");
  if (cy <= 0.0 || cy >= height) throw ConfigError("camera: cy outside (0, height)");
}

}  // namespace racesim
