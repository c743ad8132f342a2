#include "lanecurve/json_io.hpp"

#include <string>

#include "lanecurve/errors.hpp"

namespace lanecurve {

namespace {

// Wraps field access and invariant failures of a parse into DataError.
template <typename F>
auto parse_field(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad ") + what + " JSON: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid ") + what + ": " + e.what());
  }
}

json points_json(std::span<const Point2> pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

std::vector<Point2> points_from(const json& arr) {
  if (!arr.is_array()) throw DataError("expected an array of [x, y] points");
  std::vector<Point2> pts;
  pts.reserve(arr.size());
  for (const auto& p : arr) pts.push_back(point_from_json(p));
  return pts;
}

}  // namespace

json to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DataError("a point must be a [x, y] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Polyline& poly) { return json{{"points", points_json(poly.points())}}; }

Polyline polyline_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points")) throw DataError("polyline JSON needs a points array");
  return parse_field("polyline", [&] { return Polyline(points_from(j.at("points"))); });
}

json to_json(const BSplineCurve& curve) {
  return json{{"degree", curve.degree()},
              {"control_points", points_json(curve.control_points())},
              {"knots", curve.knots().values()}};
}

BSplineCurve bspline_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("control_points"))
    throw DataError("curve JSON needs degree and control_points");
  return parse_field("curve", [&] {
    const int degree = j.at("degree").get<int>();
    auto cps = points_from(j.at("control_points"));
    if (!j.contains("knots")) return BSplineCurve(degree, std::move(cps));
    return BSplineCurve(degree, std::move(cps), KnotVector(degree, j.at("knots").get<std::vector<double>>()));
  });
}

json to_json(const DistanceReport& r) {
  return json{{"d_a_to_b", r.d_a_to_b},
              {"d_b_to_a", r.d_b_to_a},
              {"d_symmetric", r.d_symmetric},
              {"n_a_to_b", r.n_a_to_b},
              {"n_b_to_a", r.n_b_to_a}};
}

json to_json(const LossBreakdown& l) {
  return json{{"l_reg", l.l_reg},
              {"l_length", l.l_length},
              {"l_start", l.l_start},
              {"l_cls", l.l_cls},
              {"l_total", l.l_total}};
}

json to_json(const EvalResult& r) {
  return json{{"tp", r.tp},           {"fp", r.fp},         {"fn", r.fn},
              {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

json to_json(const TusimpleResult& r) {
  return json{{"accuracy", r.accuracy},
              {"fp_rate", r.fp_rate},
              {"fn_rate", r.fn_rate},
              {"correct_points", r.correct_points},
              {"gt_points", r.gt_points},
              {"fp", r.fp},
              {"fn", r.fn},
              {"pred_lanes", r.pred_lanes},
              {"gt_lanes", r.gt_lanes},
              {"f1", r.f1}};
}

json to_json(const FitReport& r) {
  return json{{"curve", to_json(r.curve)},
              {"rms_error", r.rms_error},
              {"max_error", r.max_error},
              {"residuals", r.residuals}};
}

json to_json(const Assignment& a) {
  return json{{"gt_index", a.gt_index}, {"proposal_indices", a.proposal_indices}, {"distances", a.distances}};
}

json to_json(const ReferencePointSet& refs) {
  json borders = json::array();
  for (Border b : refs.border_of) borders.push_back(b == Border::kLeft ? "left" : b == Border::kBottom ? "bottom" : "right");
  return json{{"points", points_json(refs.points)}, {"border_of", std::move(borders)}};
}

json to_json(const LocalityReport& r) {
  const auto& s = r.scenario;
  json scenario{{"offset_region", s.offset_region == OffsetRegion::kUpper ? "upper" : "lower"},
                {"offset_px", s.offset_px},
                {"step_size", s.step_size},
                {"steps", s.steps},
                {"n_dis", s.n_dis},
                {"r", s.r},
                {"bspline_control_points", s.bspline_control_points},
                {"bspline_degree", s.bspline_degree},
                {"bezier_control_points", s.bezier_control_points},
                {"polynomial_degree", s.polynomial_degree}};
  json outcomes = json::array();
  for (const auto& o : r.outcomes) {
    outcomes.push_back(json{{"representation", o.representation},
                            {"lower_half_displacement", o.lower_half_displacement},
                            {"upper_half_displacement", o.upper_half_displacement},
                            {"initial_loss", o.initial_loss},
                            {"final_loss", o.final_loss},
                            {"loss_reduction", o.loss_reduction},
                            {"init_fit_rms", o.init_fit_rms}});
  }
  return json{{"scenario", std::move(scenario)},
              {"outcomes", std::move(outcomes)},
              {"bspline_support_gradient_ratio", r.bspline_support_gradient_ratio}};
}

ScoredCurve scored_curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("curve") || !j.contains("confidence"))
    throw DataError("scored curve needs curve and confidence");
  return ScoredCurve{bspline_from_json(j.at("curve")),
                     parse_field("confidence", [&] { return j.at("confidence").get<double>(); })};
}

Polyline lane_from_json(const json& j, int n_dis) {
  if (j.is_object() && j.contains("control_points")) return sample(bspline_from_json(j), n_dis);
  return polyline_from_json(j);
}

}  // namespace lanecurve
