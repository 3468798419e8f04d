#pragma once

#include <string>
#include <vector>

#include "racesim/core/types.hpp"

namespace racesim {

struct TrajectoryError : Error {
  using Error::Error;
};

struct TrajectorySample {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

/// Uniformly sampled position/velocity/yaw reference.
struct ReferenceTrajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;

  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
  double start_time() const { return samples.empty() ? 0.0 : samples.front().t; }

  /// Linear interpolation (wrapped for yaw); clamps outside the time span.
  TrajectorySample at_time(double t) const;

  /// Enforces strictly increasing, uniformly spaced timestamps.
  void validate() const;
};

/// Trajectory CSV schema: header "t,px,py,pz,vx,vy,vz,yaw", SI units, radians.
ReferenceTrajectory load_trajectory_csv(const std::string& path);
void save_trajectory_csv(const ReferenceTrajectory& traj, const std::string& path);

/// Settings for the built-in trajectory sources.
struct TrajectorySourceConfig {
  double speed = 4.0;      // cruise speed, m/s
  double dt = 0.02;        // sample spacing, s
  double ramp_time = 1.5;  // linear speed-up from rest, s (0 = constant speed)
  double tail_time = 1.5;  // hover hold appended at the end, s
};

/// Catmull-Rom spline through the traversal-order gate centers, sampled at
/// constant speed (after the optional ramp). Yaw is the rate-limited velocity
/// heading; run plan_headings afterwards for perception-aware yaw.
ReferenceTrajectory spline_through_gates(const GateMap& map, const Eigen::Vector3d& start_position,
                                         const TrajectorySourceConfig& cfg,
                                         double yaw_rate_max = 3.0);

/// Closed figure-eight (lemniscate) at constant speed, for controller tests.
ReferenceTrajectory figure_eight(const Eigen::Vector3d& center, double radius_x, double radius_y,
                                 double speed, double dt, double duration,
                                 double yaw_rate_max = 3.0);

/// For each position sample, the index into map.traversal_order of the next
/// gate not yet passed (clamped to the last entry once all are passed).
/// Passage = crossing the gate plane inside the gate square.
std::vector<int> target_gate_indices(const std::vector<Eigen::Vector3d>& positions,
                                     const GateMap& map);

/// Incremental passage tracker for online use (same rule as
/// target_gate_indices, fed one position at a time).
class GatePassageTracker {
 public:
  explicit GatePassageTracker(const GateMap& map);

  /// Advances with the next position sample; returns the number of newly
  /// passed gates.
  int update(const Eigen::Vector3d& position);

  int passed_count() const { return passed_; }
  bool finished() const;
  /// Traversal index of the current target (clamped to the last gate).
  int current_target_index() const;
  const Gate& current_target(const GateMap& map) const;

 private:
  const GateMap* map_;
  Eigen::Vector3d last_position_ = Eigen::Vector3d::Zero();
  bool has_last_ = false;
  int next_ = 0;
  int passed_ = 0;
};

/// Rate-limited heading along the velocity direction; holds the previous
/// heading below the speed threshold.
std::vector<double> velocity_aligned_yaw(const ReferenceTrajectory& traj, double yaw_rate_max,
                                         double hold_speed = 0.2);

}  // namespace racesim
