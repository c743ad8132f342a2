"""B-spline lane geometry: curves, distances, losses, assignment, NMS and metrics.

Polylines are numpy arrays of shape (N, 2) holding (x, y) pixel coordinates.
"""

from ._lanecurve import (
    BSplineCurve,
    DataError,
    FitError,
    assign_labels,
    basis,
    directed_distance,
    fast_nms,
    fit_bspline,
    focal_cls_loss,
    lane_iou,
    length_loss,
    locality_experiment,
    make_clamped_uniform_knots,
    make_reference_points,
    match_and_score,
    normalize_distance,
    parse_culane_lines,
    regression_loss,
    regression_loss_gradient,
    start_point_loss,
    symmetric_distance,
    tusimple_accuracy,
)

__all__ = [
    "BSplineCurve",
    "DataError",
    "FitError",
    "assign_labels",
    "basis",
    "directed_distance",
    "fast_nms",
    "fit_bspline",
    "focal_cls_loss",
    "lane_iou",
    "length_loss",
    "locality_experiment",
    "make_clamped_uniform_knots",
    "make_reference_points",
    "match_and_score",
    "normalize_distance",
    "parse_culane_lines",
    "regression_loss",
    "regression_loss_gradient",
    "start_point_loss",
    "symmetric_distance",
    "tusimple_accuracy",
]
