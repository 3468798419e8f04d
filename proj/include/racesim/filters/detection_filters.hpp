#pragma once

#include <optional>
#include <string>
#include <vector>

#include "racesim/core/types.hpp"
#include "racesim/pnp/square_pnp.hpp"

namespace racesim {

/// Thresholds for the three detection-rejection criteria.
struct FilterConfig {
  double tau_d_min = 1.0;   // m
  double tau_d_max = 13.0;  // m
  double tau_ratio = 2.0;
  double tau_bbox = 20.0;  // px
  double tau_area = 1.2;

  void validate() const {
    if (!(tau_d_min < tau_d_max)) throw ConfigError("filters: tau_d_min must be < tau_d_max");
    if (tau_ratio < 1.0) throw ConfigError("filters: tau_ratio must be >= 1");
    if (tau_area < 1.0) throw ConfigError("filters: tau_area must be >= 1");
  }
};

enum class RejectReason { kOcclusion, kDistance, kAspectRatio };

std::string to_string(RejectReason r);

struct FilterDecision {
  bool keep = true;
  std::optional<RejectReason> reason;
};

/// One associated detection entering the filter stage.
struct AssociatedDetection {
  Detection detection;
  Gate gate;
  PnpSolution pnp;
};

/// Output of the filter stage: indices into the input batch that survived,
/// plus the first criterion that fired for each rejected index.
struct FilterOutcome {
  std::vector<int> accepted;
  std::vector<std::pair<int, RejectReason>> rejected;
};

/// Rejects estimates outside the reliable range [tau_d_min, tau_d_max] of
/// camera-to-gate-center distance. Boundaries keep.
FilterDecision distance_filter(const PnpSolution& pnp, const Gate& gate, const FilterConfig& cfg);

/// Rejects detections whose bounding box is skewed beyond tau_ratio
/// (max(w/h, h/w) strictly greater). Boundaries keep.
FilterDecision aspect_ratio_filter(const Detection& det, const FilterConfig& cfg);

/// Marks detections likely occluded by a nearby, significantly larger
/// detection: bbox gap < tau_bbox and area ratio > tau_area. The gap is the
/// minimum distance between the axis-aligned boxes (0 when they intersect).
std::vector<FilterDecision> occlusion_filter(const std::vector<Detection>& dets,
                                             const FilterConfig& cfg);

/// Runs occlusion over the whole batch, then distance and aspect per
/// detection, recording the first criterion that fired.
FilterOutcome run_filters(const std::vector<AssociatedDetection>& associated,
                          const FilterConfig& cfg);

}  // namespace racesim
