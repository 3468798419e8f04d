#include "racesim/filters/detection_filters.hpp"

#include <algorithm>
#include <cmath>

namespace racesim {

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kOcclusion: return "occlusion";
    case RejectReason::kDistance: return "distance";
    case RejectReason::kAspectRatio: return "aspect_ratio";
  }
  return "unknown";
}

FilterDecision distance_filter(const PnpSolution& pnp, const Gate& gate, const FilterConfig& cfg) {
  const double d = (pnp.camera_position_world - gate.center).norm();
  if (d < cfg.tau_d_min || d > cfg.tau_d_max) return {false, RejectReason::kDistance};
  return {};
}

FilterDecision aspect_ratio_filter(const Detection& det, const FilterConfig& cfg) {
  const double a = std::max(det.bbox_w / det.bbox_h, det.bbox_h / det.bbox_w);
  if (a > cfg.tau_ratio) return {false, RejectReason::kAspectRatio};
  return {};
}

namespace {

// Minimum distance between two axis-aligned boxes; 0 when they intersect.
double bbox_gap(const Detection& a, const Detection& b) {
  const double dx = std::max({0.0, (a.bbox_center.x() - 0.5 * a.bbox_w) -
                                       (b.bbox_center.x() + 0.5 * b.bbox_w),
                              (b.bbox_center.x() - 0.5 * b.bbox_w) -
                                  (a.bbox_center.x() + 0.5 * a.bbox_w)});
  const double dy = std::max({0.0, (a.bbox_center.y() - 0.5 * a.bbox_h) -
                                       (b.bbox_center.y() + 0.5 * b.bbox_h),
                              (b.bbox_center.y() - 0.5 * b.bbox_h) -
                                  (a.bbox_center.y() + 0.5 * a.bbox_h)});
  return std::hypot(dx, dy);
}

}  // namespace

std::vector<FilterDecision> occlusion_filter(const std::vector<Detection>& dets,
                                             const FilterConfig& cfg) {
  std::vector<FilterDecision> out(dets.size());
  for (size_t i = 0; i < dets.size(); ++i) {
    for (size_t j = 0; j < dets.size(); ++j) {
      if (i == j) continue;
      const bool close = bbox_gap(dets[i], dets[j]) < cfg.tau_bbox;
      const bool larger = dets[j].area() / dets[i].area() > cfg.tau_area;
      if (close && larger) {
        out[i] = {false, RejectReason::kOcclusion};
        break;
      }
    }
  }
  return out;
}

FilterOutcome run_filters(const std::vector<AssociatedDetection>& associated,
                          const FilterConfig& cfg) {
  FilterOutcome outcome;
  std::vector<Detection> dets;
  dets.reserve(associated.size());
  for (const auto& a : associated) dets.push_back(a.detection);

  const auto occlusion = occlusion_filter(dets, cfg);
  for (size_t i = 0; i < associated.size(); ++i) {
    if (!occlusion[i].keep) {
      outcome.rejected.emplace_back(static_cast<int>(i), *occlusion[i].reason);
      continue;
    }
    const auto dist = distance_filter(associated[i].pnp, associated[i].gate, cfg);
    if (!dist.keep) {
      outcome.rejected.emplace_back(static_cast<int>(i), *dist.reason);
      continue;
    }
    const auto aspect = aspect_ratio_filter(associated[i].detection, cfg);
    if (!aspect.keep) {
      outcome.rejected.emplace_back(static_cast<int>(i), *aspect.reason);
      continue;
    }
    outcome.accepted.push_back(static_cast<int>(i));
  }
  return outcome;
}

}  // namespace racesim
