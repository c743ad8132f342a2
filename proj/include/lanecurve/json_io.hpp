#pragma once

// JSON forms of curves and reports. Doubles are written in shortest
// round-trip form, so curves survive a write/read cycle bit for bit.

#include <json.hpp>
#include <string>
#include <vector>

#include "lanecurve/assignment.hpp"
#include "lanecurve/bspline.hpp"
#include "lanecurve/distance.hpp"
#include "lanecurve/fit.hpp"
#include "lanecurve/locality.hpp"
#include "lanecurve/loss.hpp"
#include "lanecurve/metrics.hpp"

namespace lanecurve {

using nlohmann::json;

json to_json(Point2 p);
Point2 point_from_json(const json& j);

json to_json(const Polyline& poly);
Polyline polyline_from_json(const json& j);

/// {"degree": p, "control_points": [[x, y], ...], "knots": [...]}
json to_json(const BSplineCurve& curve);
BSplineCurve bspline_from_json(const json& j);

json to_json(const DistanceReport& r);
json to_json(const LossBreakdown& l);
json to_json(const EvalResult& r);
json to_json(const TusimpleResult& r);
json to_json(const FitReport& r);
json to_json(const Assignment& a);
json to_json(const ReferencePointSet& refs);
json to_json(const LocalityReport& r);

/// {"curve": {...}, "confidence": c}
ScoredCurve scored_curve_from_json(const json& j);

/// A curve object (sampled with n_dis points) or a {"points": [...]} object.
Polyline lane_from_json(const json& j, int n_dis);

}  // namespace lanecurve
