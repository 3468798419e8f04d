#pragma once

#include <cstdint>

#include "racesim/core/types.hpp"

namespace racesim {

/// Raised when the 4 correspondences cannot support a pose solve (collinear
/// image points, rank-deficient homography, or a quad crossing the principal
/// plane).
struct DegenerateGeometryError : Error {
  using Error::Error;
};

/// Raised when too few perturbation samples survive to estimate a spread.
struct UncertaintyUnavailableError : Error {
  using Error::Error;
};

/// Camera pose recovered from one gate detection. The rotation is kept for
/// diagnostics and initial heading alignment only; the estimation pipeline
/// consumes just the position.
struct PnpSolution {
  Eigen::Vector3d camera_position_world = Eigen::Vector3d::Zero();
  Eigen::Quaterniond camera_rotation_world = Eigen::Quaterniond::Identity();  // camera->world
  double reprojection_rms = 0.0;                                              // px
};

/// Both poses produced by the planar two-solution construction, ordered by
/// reprojection RMS.
struct PnpCandidates {
  PnpSolution best;
  PnpSolution rejected;
};

/// Per-axis standard deviation (m, world frame) of the PnP position estimate.
struct MeasurementUncertainty {
  Eigen::Vector3d sigma = Eigen::Vector3d::Zero();
};

/// Solves the 4-point planar pose problem for a square gate: DLT homography
/// from the gate plane to normalized image coordinates, analytic two-candidate
/// decomposition at the gate center, candidate selection by corner
/// reprojection RMS. All 4 keypoints must be marked visible.
PnpCandidates solve_square_pnp_candidates(const Gate& gate, const Detection& det,
                                          const CameraModel& cam);

/// Convenience wrapper returning only the lower-RMS candidate.
PnpSolution solve_square_pnp(const Gate& gate, const Detection& det, const CameraModel& cam);

/// Spread of the position estimate under i.i.d. Gaussian pixel noise on every
/// corner coordinate. Deterministic for a fixed seed. Samples whose re-solve
/// degenerates are skipped; at least 30 must survive.
MeasurementUncertainty estimate_uncertainty(const Gate& gate, const Detection& det,
                                            const CameraModel& cam, int n_perturb = 50,
                                            double pixel_sigma = 2.0, std::uint64_t seed = 12345);

}  // namespace racesim
