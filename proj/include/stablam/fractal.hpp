#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stablam/laminations.hpp"

namespace stablam {

struct DimensionEstimate {
  std::vector<double> scales;        // delta values used in the fit, descending
  std::vector<std::int64_t> counts;  // N(delta)
  double slope = 0.0;
  double stderr_ = 0.0;
  std::pair<double, double> window{0.0, 0.0};  // (delta_min, delta_max)
};

/// Dyadic scales 2^-k for k = k_min..k_max (descending deltas).
std::vector<double> dyadic_scales(int k_min, int k_max);

/// Boxes of side delta on the grid anchored at (-1, -1) that meet a chord
/// segment or the unit circle. Segments are traced cell by cell and the circle
/// column by column, so every count is exact.
std::vector<std::int64_t> box_count(const Lamination& l, const std::vector<double>& scales);

/// Boxes of side delta meeting a planar point set.
std::vector<std::int64_t> box_count_points(const std::vector<std::pair<double, double>>& pts,
                                           const std::vector<double>& scales);

/// Arcs [k delta, (k+1) delta) of the circle coordinate containing a point.
std::vector<std::int64_t> arc_count(const std::vector<double>& coords, const std::vector<double>& scales);

/// Least-squares slope of log N against log(1/delta) over scales inside
/// window (all scales when absent). Needs at least 4 scales.
DimensionEstimate fit_dimension(const std::vector<double>& scales, const std::vector<std::int64_t>& counts,
                                std::optional<std::pair<double, double>> window = std::nullopt);

struct FractalOptions {
  std::vector<double> box_scales = dyadic_scales(4, 9);
  std::vector<double> arc_scales = dyadic_scales(5, 12);
  /// Scales below saturation * (resolution of the lamination) are dropped.
  double saturation = 8.0;
  /// Endpoints only count for chords spanning at least this circle fraction.
  double min_arc = 1.0 / 16.0;
};

DimensionEstimate estimate_lamination_dimension(const Lamination& l, const FractalOptions& opts = {});

DimensionEstimate estimate_endpoint_dimension(const Lamination& l, const FractalOptions& opts = {});

/// Arc covering of the face boundary sample, rescaled to its own span.
DimensionEstimate estimate_face_boundary_dimension(const FaceRecord& f, double resolution,
                                                   const FractalOptions& opts = {});

/// Face with the most boundary points; throws EmptyInput without faces.
const FaceRecord& largest_face(const std::vector<FaceRecord>& faces);

/// Rotates every chord by `shift` (circle fraction), keeping s < t.
Lamination rotated(const Lamination& l, double shift);

}  // namespace stablam
