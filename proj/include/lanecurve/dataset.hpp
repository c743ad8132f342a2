#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/errors.hpp"
#include "lanecurve/fit.hpp"
#include "lanecurve/geometry.hpp"
#include "lanecurve/metrics.hpp"

namespace lanecurve {

struct LaneAnnotation {
  /// Label points, ordered by increasing image y.
  Polyline raw_points;
  /// B-spline ground truth, ordered from the image bottom upwards.
  std::optional<BSplineCurve> fitted;
  std::optional<double> fit_rms;
  /// Set when the lane had too few points for the requested control count.
  bool reduced_fit = false;
  std::string fit_note;
  std::string source_file;
};

struct Frame {
  Canvas image_size;
  std::vector<LaneAnnotation> lanes;
  std::optional<std::string> scenario_tag;
  std::string raw_file;
  /// Tusimple rows; empty for other formats.
  std::vector<double> h_samples;
};

/// Stable sort by increasing y. Idempotent.
Polyline canonicalize(const Polyline& lane);
/// Canonical order reversed: the lane start (largest y) first.
Polyline bottom_to_top(const Polyline& lane);
/// The labeled endpoint closer to the image bottom.
Point2 lane_start(const Polyline& lane);

/// One line of a Tusimple label file: lanes as x-lists over shared rows.
struct TusimpleRecord {
  std::vector<RowLane> lanes;
  std::vector<double> h_samples;
  std::string raw_file;
  std::optional<double> run_time;
};

TusimpleRecord parse_tusimple_record(std::string_view json_text);
/// Submission format: {"lanes", "h_samples", "raw_file", "run_time"}.
std::string to_tusimple_json(const TusimpleRecord& record);
std::vector<TusimpleRecord> parse_tusimple_file(std::string_view text);

/// Frame of 1280 x 720 with one polyline per lane with at least 2 visible
/// points.
Frame parse_tusimple_line(std::string_view json_text);

/// x of `lane` at each row, by linear interpolation in y; -2 outside the
/// lane's vertical extent.
RowLane lane_to_row_lane(const Polyline& lane, const std::vector<double>& h_samples);

/// One polyline per non-empty line of "x y x y ..." pairs.
std::vector<Polyline> parse_culane_lines(std::string_view text);
std::string to_culane_lines(const std::vector<Polyline>& lanes);

/// CULane lanes on a 1640 x 590 canvas; points outside it are dropped and
/// lanes left with fewer than 2 points are skipped.
Frame frame_from_culane(std::string_view text, std::string source_file = {},
                        std::optional<std::string> scenario_tag = std::nullopt);

/// Fits every lane bottom-to-top. A lane with fewer points than control
/// points is fitted with one control point per label point and degree at
/// most points - 1, and flagged. Failed fits leave `fitted` empty.
Frame build_ground_truth(const Frame& frame, const FitConfig& cfg = {});

}  // namespace lanecurve
