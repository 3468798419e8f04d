#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "racesim/association/associate.hpp"
#include "racesim/association/hungarian.hpp"
#include "racesim/core/angles.hpp"

using namespace racesim;

namespace {

CameraModel test_camera() {
  CameraModel cam;
  cam.fx = cam.fy = 300.0;
  cam.cx = 410.0;
  cam.cy = 313.0;
  return cam;
}

Detection detection_from_projection(const Gate& gate, const Pose& drone_pose,
                                    const CameraModel& cam, const Eigen::Vector2d& shift = {0, 0}) {
  const auto px = project_gate(gate, drone_pose, cam);
  REQUIRE(px.has_value());
  Detection det;
  Eigen::Vector2d lo = (*px)[0].uv(), hi = (*px)[0].uv();
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector2d p = (*px)[k].uv() + shift;
    det.keypoints[k] = {p.x(), p.y(), true};
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  det.bbox_center = 0.5 * (lo + hi);
  det.bbox_w = hi.x() - lo.x();
  det.bbox_h = hi.y() - lo.y();
  return det;
}

// Exhaustive minimum over all one-to-one assignments; rows <= cols assumed
// handled by trying column subsets via permutation of column indices.
double brute_force_min_cost(const std::vector<double>& cost, int rows, int cols) {
  const int n = std::max(rows, cols);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    bool feasible = true;
    for (int i = 0; i < rows && feasible; ++i) {
      if (perm[i] >= cols) continue;  // row left unmatched via dummy column
      const double c = cost[static_cast<size_t>(i) * cols + perm[i]];
      if (!std::isfinite(c)) feasible = false;
      else total += c;
    }
    if (feasible) best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("assignment equals brute force on random square and rectangular matrices") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    std::vector<double> cost(static_cast<size_t>(rows) * cols);
    for (auto& c : cost) c = u(rng);

    const auto row_to_col = solve_assignment(cost, rows, cols);
    double total = 0.0;
    std::vector<char> used(cols, 0);
    int assigned = 0;
    for (int i = 0; i < rows; ++i) {
      const int j = row_to_col[i];
      if (j < 0) continue;
      CHECK(!used[j]);
      used[j] = 1;
      total += cost[static_cast<size_t>(i) * cols + j];
      ++assigned;
    }
    CHECK(assigned == std::min(rows, cols));
    CHECK(total == doctest::Approx(brute_force_min_cost(cost, rows, cols)).epsilon(1e-12));
  }
}

TEST_CASE("assignment avoids forbidden entries when a feasible matching exists") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4;
    std::vector<double> cost(n * n);
    for (auto& c : cost) c = u(rng);
    // Forbid a random third of the entries, keeping the diagonal feasible.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && u(rng) < 33.0) cost[static_cast<size_t>(i) * n + j] = kForbiddenCost;

    const auto row_to_col = solve_assignment(cost, n, n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      REQUIRE(row_to_col[i] >= 0);
      CHECK(std::isfinite(cost[static_cast<size_t>(i) * n + row_to_col[i]]));
      total += cost[static_cast<size_t>(i) * n + row_to_col[i]];
    }
    CHECK(total == doctest::Approx(brute_force_min_cost(cost, n, n)).epsilon(1e-12));
  }
}

TEST_CASE("reprojection cost: self-match is zero, uniform shift is 4*d^2") {
  const CameraModel cam = test_camera();
  const Gate gate = Gate::from_center_yaw(2, {6.0, 1.0, 1.5}, kPi, 1.5);
  const Pose drone({0, 0, 1.5}, Eigen::Quaterniond::Identity());

  const Detection self = detection_from_projection(gate, drone, cam);
  CHECK(reprojection_cost(gate, self, drone, cam) < 1e-9);

  const Detection shifted = detection_from_projection(gate, drone, cam, {3.0, 4.0});
  CHECK(reprojection_cost(gate, shifted, drone, cam) == doctest::Approx(100.0).epsilon(1e-9));

  // Behind the camera -> infeasible marker.
  const Pose turned({0, 0, 1.5}, yaw_to_quat(kPi));
  CHECK(reprojection_cost(gate, self, turned, cam) == kForbiddenCost);
}

TEST_CASE("reprojection cost equals the per-corner sum") {
  const CameraModel cam = test_camera();
  const Gate gate = Gate::from_center_yaw(0, {7.0, -1.0, 1.2}, kPi * 0.9, 1.5);
  const Pose drone({0, 0, 1.4}, yaw_to_quat(-0.1));
  std::mt19937_64 rng(47);
  std::normal_distribution<double> n(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    Detection det = detection_from_projection(gate, drone, cam);
    double expected = 0.0;
    const auto px = project_gate(gate, drone, cam);
    for (int k = 0; k < 4; ++k) {
      const Eigen::Vector2d noise(n(rng), n(rng));
      det.keypoints[k].x += noise.x();
      det.keypoints[k].y += noise.y();
      expected += (det.keypoints[k].point() - (*px)[k].uv()).squaredNorm();
    }
    CHECK(reprojection_cost(gate, det, drone, cam) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("associate: trivial and empty cases") {
  const CameraModel cam = test_camera();
  GateMap map;
  map.gates.push_back(Gate::from_center_yaw(0, {6.0, 0.0, 1.5}, kPi, 1.5));
  map.traversal_order = {0};
  const Pose drone({0, 0, 1.5}, Eigen::Quaterniond::Identity());

  SUBCASE("no detections") {
    const auto res = associate({}, map, drone, cam);
    CHECK(res.pairs.empty());
    CHECK(res.unmatched_detections.empty());
    CHECK(res.total_cost == 0.0);
  }

  SUBCASE("single feasible detection") {
    const Detection det = detection_from_projection(map.gates[0], drone, cam);
    const auto res = associate({det}, map, drone, cam);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].first == 0);
    CHECK(res.pairs[0].second == 0);
    CHECK(res.unmatched_detections.empty());
  }

  SUBCASE("gating excludes bad matches") {
    Detection det = detection_from_projection(map.gates[0], drone, cam, {500.0, 0.0});
    const auto res = associate({det}, map, drone, cam, /*gating_cost=*/1000.0);
    CHECK(res.pairs.empty());
    REQUIRE(res.unmatched_detections.size() == 1);
    CHECK(res.unmatched_detections[0] == 0);
  }
}

TEST_CASE("associate matches the map layout and is permutation invariant") {
  const CameraModel cam = test_camera();
  GateMap map;
  map.gates.push_back(Gate::from_center_yaw(0, {8.0, -3.0, 1.5}, kPi, 1.5));
  map.gates.push_back(Gate::from_center_yaw(1, {8.0, 0.0, 1.5}, kPi, 1.5));
  map.gates.push_back(Gate::from_center_yaw(2, {8.0, 3.0, 1.5}, kPi, 1.5));
  map.gates.push_back(Gate::from_center_yaw(3, {14.0, 0.0, 1.5}, kPi, 1.5));
  map.gates.push_back(Gate::from_center_yaw(4, {-9.0, 0.0, 1.5}, 0.0, 1.5));
  map.traversal_order = {0, 1, 2, 3, 4};
  const Pose drone({0, 0, 1.5}, Eigen::Quaterniond::Identity());

  std::mt19937_64 rng(53);
  std::normal_distribution<double> n(0.0, 1.5);
  std::vector<Detection> dets;
  std::vector<int> expected_gate;
  for (int j : {1, 2, 0}) {
    Detection det = detection_from_projection(map.gates[j], drone, cam);
    for (auto& kp : det.keypoints) {
      kp.x += n(rng);
      kp.y += n(rng);
    }
    dets.push_back(det);
    expected_gate.push_back(j);
  }

  const auto res = associate(dets, map, drone, cam);
  REQUIRE(res.pairs.size() == 3);
  double pair_sum = 0.0;
  for (const auto& [di, gj] : res.pairs) {
    CHECK(gj == expected_gate[di]);
    pair_sum += reprojection_cost(map.gates[gj], dets[di], drone, cam);
  }
  CHECK(res.total_cost == doctest::Approx(pair_sum).epsilon(1e-9));

  // Shuffle detections: pair set permutes, total cost unchanged.
  std::vector<int> order = {2, 0, 1};
  std::vector<Detection> shuffled;
  for (int i : order) shuffled.push_back(dets[i]);
  const auto res2 = associate(shuffled, map, drone, cam);
  REQUIRE(res2.pairs.size() == 3);
  CHECK(res2.total_cost == doctest::Approx(res.total_cost).epsilon(1e-9));
  for (const auto& [di, gj] : res2.pairs) CHECK(gj == expected_gate[order[di]]);
}

TEST_CASE("raising the gating cost never increases the unmatched count") {
  const CameraModel cam = test_camera();
  GateMap map;
  for (int j = 0; j < 4; ++j)
    map.gates.push_back(Gate::from_center_yaw(j, {7.0, -4.5 + 3.0 * j, 1.5}, kPi, 1.5));
  map.traversal_order = {0, 1, 2, 3};
  const Pose drone({0, 0, 1.5}, Eigen::Quaterniond::Identity());

  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> shift(-60.0, 60.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Detection> dets;
    for (int j = 0; j < 4; ++j) {
      dets.push_back(
          detection_from_projection(map.gates[j], drone, cam, {shift(rng), shift(rng)}));
    }
    size_t prev_unmatched = dets.size() + 1;
    for (double gate_cost : {200.0, 2000.0, 20000.0, 2.0e5}) {
      const auto res = associate(dets, map, drone, cam, gate_cost);
      if (prev_unmatched <= dets.size())
        CHECK(res.unmatched_detections.size() <= prev_unmatched);
      prev_unmatched = res.unmatched_detections.size();
    }
  }
}
