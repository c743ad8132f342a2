#include "lanecurve/locality.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "lanecurve/fit.hpp"
#include "lanecurve/loss.hpp"

namespace lanecurve {

namespace {

constexpr double kLaneBottom = 310.0;
constexpr double kLaneHeight = 300.0;

// S-shaped lane: x is a cubic in s with an inflection at s = 0.5, y runs
// linearly from the image bottom upwards.
Point2 s_curve(double s) {
  return {350.0 + 200.0 * s - 300.0 * s * s + 200.0 * s * s * s, kLaneBottom - kLaneHeight * s};
}

struct Halves {
  double lower = 0.0;
  double upper = 0.0;
};

Halves mean_displacement(const Polyline& before, const Polyline& after, double y_mid) {
  double lower = 0.0;
  double upper = 0.0;
  int n_lower = 0;
  int n_upper = 0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    const double d = distance(before[k], after[k]);
    if (before[k].y >= y_mid) {
      lower += d;
      ++n_lower;
    } else {
      upper += d;
      ++n_upper;
    }
  }
  return {n_lower ? lower / n_lower : 0.0, n_upper ? upper / n_upper : 0.0};
}

}  // namespace

void LocalityScenario::validate() const {
  if (!std::isfinite(offset_px)) throw std::invalid_argument("offset must be finite");
  if (!(step_size > 0.0) || steps < 1) throw std::invalid_argument("step size and step count must be positive");
  if (n_dis < 4) throw std::invalid_argument("n_dis must be at least 4");
  if (bspline_control_points < 4 || bspline_control_points < bspline_degree + 1)
    throw std::invalid_argument("B-spline needs at least 4 and at least degree + 1 control points");
  if (bezier_control_points < 2 || polynomial_degree < 0) throw std::invalid_argument("invalid comparison curve size");
  ExtendedRadius{r};
}

const RepresentationOutcome& LocalityReport::outcome(const std::string& representation) const {
  for (const auto& o : outcomes)
    if (o.representation == representation) return o;
  throw std::out_of_range("no outcome for representation '" + representation + "'");
}

BSplineCurve locality_target_curve(const LocalityScenario& scenario) {
  std::vector<Point2> pts;
  for (double s : sample_parameters(scenario.n_dis)) pts.push_back(s_curve(s));
  FitConfig cfg{scenario.bspline_control_points, scenario.bspline_degree, Parameterization::kUniform};
  return fit_bspline_least_squares(Polyline(std::move(pts)), cfg).curve;
}

BSplineCurve locality_init_curve(const LocalityScenario& scenario) {
  const BSplineCurve target = locality_target_curve(scenario);
  auto cps = target.control_points();
  const std::size_t n = cps.size();
  const Point2 shift{scenario.offset_px, 0.0};
  if (scenario.offset_region == OffsetRegion::kUpper) {
    cps[n - 1] += shift;
    cps[n - 2] += shift;
  } else {
    cps[0] += shift;
    cps[1] += shift;
  }
  return target.with_control_points(std::move(cps));
}

LocalityReport locality_experiment(const LocalityScenario& scenario) {
  scenario.validate();
  LocalityReport report;
  report.scenario = scenario;

  const BSplineCurve target_curve = locality_target_curve(scenario);
  const BSplineCurve init_bspline = locality_init_curve(scenario);
  const Polyline target = sample(target_curve, scenario.n_dis);
  const Polyline drifted = sample(init_bspline, scenario.n_dis);
  const double y_mid = kLaneBottom - 0.5 * kLaneHeight;

  const auto bezier = fit_bezier_least_squares(drifted, scenario.bezier_control_points, Parameterization::kUniform);
  const auto poly = fit_polynomial_least_squares(drifted, scenario.polynomial_degree);
  const std::vector<std::pair<AnyCurve, double>> inits = {
      {init_bspline, 0.0}, {bezier.curve, bezier.rms_error}, {poly.curve, poly.rms_error}};

  DescentConfig cfg;
  cfg.step_size = scenario.step_size;
  cfg.steps = scenario.steps;
  cfg.n_dis = scenario.n_dis;
  cfg.r = ExtendedRadius{scenario.r};

  for (const auto& [init, rms] : inits) {
    const auto trajectory = fit_by_gradient_descent(init, target, cfg);
    const Polyline start = lane_samples(init, scenario.n_dis);
    RepresentationOutcome out;
    out.representation = representation_name(init);
    out.init_fit_rms = rms;
    for (const auto& step : trajectory) {
      const Halves h = mean_displacement(start, lane_samples(step.curve, scenario.n_dis), y_mid);
      out.step_loss.push_back(step.loss.l_total);
      out.step_lower_displacement.push_back(h.lower);
      out.step_upper_displacement.push_back(h.upper);
    }
    out.lower_half_displacement = out.step_lower_displacement.back();
    out.upper_half_displacement = out.step_upper_displacement.back();
    out.initial_loss = out.step_loss.front();
    out.final_loss = out.step_loss.back();
    out.loss_reduction = out.initial_loss - out.final_loss;
    report.outcomes.push_back(std::move(out));
  }

  const auto grad = regression_loss_gradient(target, init_bspline, cfg.r, scenario.n_dis);
  const auto& knots = init_bspline.knots();
  const auto p = static_cast<std::size_t>(init_bspline.degree());
  const bool upper = scenario.offset_region == OffsetRegion::kUpper;
  double coincident = 0.0;
  double offset = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double lo = knots[i];
    const double hi = knots[i + p + 1];
    const double g = norm(grad[i]);
    const bool in_lower = hi <= 0.5;
    const bool in_upper = lo >= 0.5;
    if (upper ? in_lower : in_upper) coincident = std::max(coincident, g);
    if (upper ? in_upper : in_lower) offset = std::max(offset, g);
  }
  report.bspline_support_gradient_ratio = offset > 0.0 ? coincident / offset : 0.0;
  return report;
}

std::string locality_csv(const LocalityReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "step,representation,loss,lower_half_displacement,upper_half_displacement\n";
  for (const auto& o : report.outcomes) {
    for (std::size_t s = 0; s < o.step_loss.size(); ++s) {
      out << s << ',' << o.representation << ',' << o.step_loss[s] << ',' << o.step_lower_displacement[s] << ','
          << o.step_upper_displacement[s] << '\n';
    }
  }
  return out.str();
}

}  // namespace lanecurve
