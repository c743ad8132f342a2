#pragma once

#include <string>
#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/descent.hpp"

namespace lanecurve {

/// Which half of the lane (in image rows) the initial prediction is pushed
/// away from the target. The other half coincides.
enum class OffsetRegion { kUpper, kLower };

/// A synthetic training situation: an S-shaped target lane and a prediction
/// that matches it on one half and drifts sideways by `offset_px` at the
/// other end. Every representation starts from its least-squares fit of the
/// same drifted B-spline lane and takes the same gradient steps.
struct LocalityScenario {
  OffsetRegion offset_region = OffsetRegion::kUpper;
  double offset_px = 20.0;
  double step_size = 10.0;
  int steps = 1;
  int n_dis = kDefaultSampleCount;
  double r = ExtendedRadius::kDefault;
  int bspline_control_points = kDefaultControlPoints;
  int bspline_degree = kDefaultDegree;
  int bezier_control_points = 4;
  int polynomial_degree = 3;

  void validate() const;
};

struct RepresentationOutcome {
  std::string representation;
  /// Mean displacement of samples in the bottom / top half of the image
  /// rows, between the initial curve and the curve after the last step.
  double lower_half_displacement = 0.0;
  double upper_half_displacement = 0.0;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double loss_reduction = 0.0;
  /// RMS error of the initial fit to the drifted lane.
  double init_fit_rms = 0.0;
  /// Per step (including step 0): loss and half displacements from the start.
  std::vector<double> step_loss;
  std::vector<double> step_lower_displacement;
  std::vector<double> step_upper_displacement;
};

struct LocalityReport {
  LocalityScenario scenario;
  std::vector<RepresentationOutcome> outcomes;  // bspline, bezier, polynomial
  /// Largest control-point gradient norm among B-spline control points whose
  /// support lies in the coincident half, over the largest among those whose
  /// support lies in the offset half.
  double bspline_support_gradient_ratio = 0.0;

  [[nodiscard]] const RepresentationOutcome& outcome(const std::string& representation) const;
};

/// The undisturbed S-shaped lane, as a B-spline of the scenario's size.
BSplineCurve locality_target_curve(const LocalityScenario& scenario);
/// The target with its two end control points on the offset side shifted by
/// offset_px in x.
BSplineCurve locality_init_curve(const LocalityScenario& scenario);

LocalityReport locality_experiment(const LocalityScenario& scenario);

/// step,representation,loss,lower_half_displacement,upper_half_displacement
std::string locality_csv(const LocalityReport& report);

}  // namespace lanecurve
