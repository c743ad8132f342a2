#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lanecurve/assignment.hpp"
#include "lanecurve/bspline.hpp"
#include "lanecurve/dataset.hpp"
#include "lanecurve/distance.hpp"
#include "lanecurve/fit.hpp"
#include "lanecurve/json_io.hpp"
#include "lanecurve/locality.hpp"
#include "lanecurve/loss.hpp"
#include "lanecurve/metrics.hpp"

namespace py = pybind11;
using namespace lanecurve;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Point2> to_points(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw std::invalid_argument("expected an (N, 2) array of points");
  std::vector<Point2> pts(static_cast<std::size_t>(a.shape(0)));
  const auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) pts[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
  return pts;
}

Array to_array(std::span<const Point2> pts) {
  Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(static_cast<py::ssize_t>(i), 0) = pts[i].x;
    w(static_cast<py::ssize_t>(i), 1) = pts[i].y;
  }
  return out;
}

Polyline to_polyline(const Array& a) { return Polyline(to_points(a)); }

py::dict report_dict(const DistanceReport& r) {
  py::dict d;
  d["d_a_to_b"] = r.d_a_to_b;
  d["d_b_to_a"] = r.d_b_to_a;
  d["d_symmetric"] = r.d_symmetric;
  d["n_a_to_b"] = r.n_a_to_b;
  d["n_b_to_a"] = r.n_b_to_a;
  return d;
}

py::object from_json(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_lanecurve, m) {
  m.doc() = "B-spline lane geometry: curves, distances, losses, assignment, NMS and metrics";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<FitError>(m, "FitError", PyExc_ValueError);

  py::class_<BSplineCurve>(m, "BSplineCurve")
      .def(py::init([](int degree, const Array& cps) { return BSplineCurve(degree, to_points(cps)); }),
           py::arg("degree"), py::arg("control_points"))
      .def_property_readonly("degree", &BSplineCurve::degree)
      .def_property_readonly("control_points", [](const BSplineCurve& c) { return to_array(c.control_points()); })
      .def_property_readonly("knots", [](const BSplineCurve& c) { return c.knots().values(); })
      .def("evaluate", [](const BSplineCurve& c, double u) {
        const Point2 p = evaluate(c, u);
        return py::make_tuple(p.x, p.y);
      })
      .def("sample", [](const BSplineCurve& c, int n) { return to_array(sample(c, n).points()); },
           py::arg("n") = kDefaultSampleCount)
      .def("to_json", [](const BSplineCurve& c) { return to_json(c).dump(); })
      .def_static("from_json", [](const std::string& text) {
        try {
          return bspline_from_json(json::parse(text));
        } catch (const json::parse_error& e) {
          throw DataError(e.what());
        }
      })
      .def("__repr__", [](const BSplineCurve& c) {
        return "BSplineCurve(degree=" + std::to_string(c.degree()) +
               ", control_points=" + std::to_string(c.control_points().size()) + ")";
      });

  m.def("make_clamped_uniform_knots", [](int n, int p) { return make_clamped_uniform_knots(n, p).values(); },
        py::arg("n"), py::arg("p"));
  m.def(
      "basis",
      [](int i, int p, double u, const std::vector<double>& knots) { return basis(i, p, u, KnotVector(p, knots)); },
      py::arg("i"), py::arg("p"), py::arg("u"), py::arg("knots"));

  m.def(
      "symmetric_distance",
      [](const Array& a, const Array& b, double r) {
        return report_dict(symmetric_distance(to_polyline(a), to_polyline(b), ExtendedRadius{r}));
      },
      py::arg("a"), py::arg("b"), py::arg("r") = ExtendedRadius::kDefault);
  m.def(
      "directed_distance", [](const Array& a, const Array& b) { return directed_distance(to_polyline(a), to_polyline(b)); },
      py::arg("a"), py::arg("b"));
  m.def("normalize_distance", [](double d, double r) { return normalize_distance(d, ExtendedRadius{r}); },
        py::arg("d"), py::arg("r") = ExtendedRadius::kDefault);

  m.def(
      "regression_loss",
      [](const Array& gt, const Array& pred, double r) {
        return regression_loss(to_polyline(gt), to_polyline(pred), ExtendedRadius{r});
      },
      py::arg("gt"), py::arg("pred"), py::arg("r") = ExtendedRadius::kDefault);
  m.def(
      "length_loss", [](const Array& gt, const Array& pred) { return length_loss(to_polyline(gt), to_polyline(pred)); },
      py::arg("gt"), py::arg("pred"));
  m.def(
      "start_point_loss",
      [](std::pair<double, double> a, std::pair<double, double> b) {
        return start_point_loss({a.first, a.second}, {b.first, b.second});
      },
      py::arg("gt_start"), py::arg("pred_start"));
  m.def("focal_cls_loss", &focal_cls_loss, py::arg("pred_conf"), py::arg("target"), py::arg("alpha") = kFocalAlpha,
        py::arg("gamma") = kFocalGamma);
  m.def(
      "regression_loss_gradient",
      [](const Array& gt, const BSplineCurve& pred, double r, int n_dis) {
        const auto g = regression_loss_gradient(to_polyline(gt), pred, ExtendedRadius{r}, n_dis);
        return to_array(g);
      },
      py::arg("gt"), py::arg("pred"), py::arg("r") = ExtendedRadius::kDefault,
      py::arg("n_dis") = kDefaultSampleCount);

  m.def(
      "fit_bspline",
      [](const Array& points, int n_control, int degree, const std::string& parameterization) {
        const auto rep = fit_bspline_least_squares(
            to_polyline(points), FitConfig{n_control, degree, parse_parameterization(parameterization)});
        return py::make_tuple(rep.curve, rep.rms_error);
      },
      py::arg("points"), py::arg("n_control") = kDefaultControlPoints, py::arg("degree") = kDefaultDegree,
      py::arg("parameterization") = "chord_length");

  m.def(
      "make_reference_points",
      [](int n_p, double w, double h) { return to_array(make_reference_points(n_p, w, h).points); },
      py::arg("n_p") = kDefaultProposals, py::arg("width") = kCulaneCanvas.width,
      py::arg("height") = kCulaneCanvas.height);
  m.def(
      "assign_labels",
      [](const Array& starts, const Array& refs, int k) {
        ReferencePointSet set;
        set.points = to_points(refs);
        set.border_of.assign(set.points.size(), Border::kBottom);
        std::vector<std::vector<std::size_t>> out;
        for (const auto& a : assign_labels(to_points(starts), set, k)) out.push_back(a.proposal_indices);
        return out;
      },
      py::arg("starts"), py::arg("refs"), py::arg("k") = kDefaultTopK);
  m.def(
      "fast_nms",
      [](const std::vector<BSplineCurve>& curves, const std::vector<double>& confidences, double distance_threshold,
         double conf_threshold, int n_dis) {
        if (curves.size() != confidences.size()) throw std::invalid_argument("one confidence per curve");
        std::vector<ScoredCurve> cands;
        for (std::size_t i = 0; i < curves.size(); ++i) cands.push_back({curves[i], confidences[i]});
        return fast_nms(cands, distance_threshold, conf_threshold, n_dis);
      },
      py::arg("curves"), py::arg("confidences"), py::arg("distance_threshold") = kDefaultNmsDistance,
      py::arg("conf_threshold") = kDefaultConfThreshold, py::arg("n_dis") = kDefaultSampleCount);

  m.def(
      "lane_iou",
      [](const Array& a, const Array& b, double width, int canvas_w, int canvas_h) {
        return lane_iou(to_polyline(a), to_polyline(b), width, Canvas{canvas_w, canvas_h});
      },
      py::arg("pred"), py::arg("gt"), py::arg("width") = kCulaneStrokeWidth,
      py::arg("canvas_width") = kCulaneCanvas.width, py::arg("canvas_height") = kCulaneCanvas.height);
  m.def(
      "match_and_score",
      [](const std::vector<Array>& preds, const std::vector<Array>& gts, double iou_thresh, double width) {
        std::vector<Polyline> p;
        std::vector<Polyline> g;
        for (const auto& a : preds) p.push_back(to_polyline(a));
        for (const auto& a : gts) g.push_back(to_polyline(a));
        return from_json(to_json(match_and_score(p, g, iou_thresh, width)));
      },
      py::arg("preds"), py::arg("gts"), py::arg("iou_thresh") = kCulaneIouThreshold,
      py::arg("width") = kCulaneStrokeWidth);
  m.def(
      "tusimple_accuracy",
      [](const std::vector<RowLane>& preds, const std::vector<RowLane>& gts, const std::vector<double>& h_samples,
         double x_tolerance) { return from_json(to_json(tusimple_accuracy(preds, gts, h_samples, x_tolerance))); },
      py::arg("preds"), py::arg("gts"), py::arg("h_samples"), py::arg("x_tolerance") = kTusimpleXTolerance);

  m.def(
      "parse_culane_lines",
      [](const std::string& text) {
        std::vector<Array> out;
        for (const auto& l : parse_culane_lines(text)) out.push_back(to_array(l.points()));
        return out;
      },
      py::arg("text"));

  m.def(
      "locality_experiment",
      [](double offset_px, double step_size, int steps, bool mirror) {
        LocalityScenario s;
        s.offset_px = offset_px;
        s.step_size = step_size;
        s.steps = steps;
        s.offset_region = mirror ? OffsetRegion::kLower : OffsetRegion::kUpper;
        return from_json(to_json(locality_experiment(s)));
      },
      py::arg("offset_px") = 20.0, py::arg("step_size") = LocalityScenario{}.step_size, py::arg("steps") = 1,
      py::arg("mirror") = false);
}
