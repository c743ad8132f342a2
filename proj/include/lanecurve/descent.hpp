#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lanecurve/bspline.hpp"
#include "lanecurve/distance.hpp"
#include "lanecurve/loss.hpp"

namespace lanecurve {

/// Raised when the descent loss exceeds ten times its initial value.
class DescentDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DescentConfig {
  double step_size = 100.0;
  int steps = 1;
  /// The classification weight is unused; descent has no confidence.
  LossWeights weights{1.0, 0.0, 0.0, 0.0};
  int n_dis = kDefaultSampleCount;
  ExtendedRadius r{};

  void validate() const;
};

struct DescentStep {
  int step = 0;
  AnyCurve curve;
  LossBreakdown loss;
};

std::string representation_name(const AnyCurve& curve);

/// Samples ordered from the lane start (image bottom) upwards. Polynomial
/// curves sample from y_start, so their samples are reversed.
Polyline lane_samples(const AnyCurve& curve, int n);

/// Regression, length and start terms of `samples` against `target`; both
/// ordered bottom-to-top.
LossBreakdown descent_loss(const Polyline& target, const Polyline& samples, const DescentConfig& cfg);

/// Gradient of the weighted descent loss with respect to the free parameters
/// of `curve`: control point coordinates (x0, y0, x1, y1, ...) for B-spline
/// and Bezier curves, and the normalized monomial coefficients for
/// polynomials (see to_normalized_coefficients).
std::vector<double> descent_gradient(const AnyCurve& curve, const Polyline& target, const DescentConfig& cfg);

/// Plain gradient descent. Returns cfg.steps + 1 entries, the first being
/// `init`.
std::vector<DescentStep> fit_by_gradient_descent(const AnyCurve& init, const Polyline& target,
                                                 const DescentConfig& cfg);

}  // namespace lanecurve
