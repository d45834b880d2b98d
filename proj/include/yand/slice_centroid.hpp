#pragma once

#include <optional>
#include <vector>

#include "yand/objective.hpp"

namespace yand {

struct SliceParams {
  double delta = 1e-3;
  /// Half-width R of the scanned parameter range; computed from the
  /// tangent curvature when unset (see default_slice_window).
  std::optional<double> window;
  int samples = 2048;
  double bisect_tol = 1e-12;
};

struct SliceInterval {
  double a = 0.0;
  double b = 0.0;
};

/// Sublevel part {f <= f(z)} of the line z + (C/|g|) n_hat + t t_hat, t in [-R, R].
struct SliceRegion {
  std::vector<SliceInterval> intervals;
  double total_length = 0.0;
  double centroid_param = 0.0;
  double window = 0.0;
};

/// R = 10 sqrt(2 delta / lambda) with lambda = max(1e-3 max(1, |B|), B), floored at 1.
double default_slice_window(const Objective& obj, const Vector& z, double delta);

/// 2-D only. Throws Errc::ZeroGradient, Errc::EmptySlice, Errc::InvalidArgument.
SliceRegion slice_region_2d(const Objective& obj, const Vector& z, double level_offset,
                            const SliceParams& params);

/// (z - g(-delta)) / delta where g is the centroid of the slice at C = -delta,
/// rescaled to frame-normal component -1 when that component is negative and
/// returned raw otherwise.
Vector slice_centroid_direction(const Objective& obj, const Vector& z, const SliceParams& params);

}  // namespace yand
