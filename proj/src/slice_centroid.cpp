#include "yand/slice_centroid.hpp"

#include <algorithm>
#include <cmath>

#include "yand/direction.hpp"
#include "yand/error.hpp"

namespace yand {
namespace {

void require_planar(const Objective& obj, const Vector& z) {
  if (obj.dim() != 2 || z.size() != 2) {
    throw Error(Errc::InvalidArgument, "slice centroid is implemented for 2-D objectives");
  }
}

}  // namespace

double default_slice_window(const Objective& obj, const Vector& z, double delta) {
  const BlockHessian blk = block_decompose(obj, z);
  const double b = blk.tangent_block(0, 0);
  const double floor = 1e-3 * std::max(1.0, std::abs(b));
  const double lambda = std::max(floor, b);
  return std::max(1.0, 10.0 * std::sqrt(2.0 * delta / lambda));
}

SliceRegion slice_region_2d(const Objective& obj, const Vector& z, double level_offset,
                            const SliceParams& params) {
  require_planar(obj, z);
  if (params.samples < 64 || !(params.bisect_tol > 0.0) || !(params.delta > 0.0)) {
    throw Error(Errc::InvalidArgument, "invalid slice parameters");
  }
  const Frame frame = build_normal_aligned_frame(obj.gradient(z));
  const double window = params.window.value_or(default_slice_window(obj, z, params.delta));
  if (!(window > 0.0)) throw Error(Errc::InvalidArgument, "slice window must be positive");

  const Vector base = z + (level_offset / frame.grad_norm) * frame.normal();
  const Vector tangent = frame.q.col(0);
  const double fz = obj.value(z);
  // value() is +inf off the domain, which counts as outside the sublevel set.
  const auto inside = [&](double t) { return obj.value(base + t * tangent) <= fz; };

  const auto refine = [&](double lo_in, double hi_out) {
    // lo_in satisfies inside(), hi_out does not; either may be the larger.
    while (std::abs(hi_out - lo_in) > params.bisect_tol) {
      const double mid = 0.5 * (lo_in + hi_out);
      if (mid == lo_in || mid == hi_out) break;
      (inside(mid) ? lo_in : hi_out) = mid;
    }
    return 0.5 * (lo_in + hi_out);
  };

  SliceRegion region;
  region.window = window;
  const int m = params.samples;
  const double step = 2.0 * window / (m - 1);
  double prev_t = -window;
  bool prev_in = inside(prev_t);
  double start = prev_in ? -window : 0.0;
  for (int k = 1; k < m; ++k) {
    const double t = (k == m - 1) ? window : -window + k * step;
    const bool now_in = inside(t);
    if (now_in && !prev_in) start = refine(t, prev_t);
    if (!now_in && prev_in) region.intervals.push_back({start, refine(prev_t, t)});
    prev_t = t;
    prev_in = now_in;
  }
  if (prev_in) region.intervals.push_back({start, window});

  double moment = 0.0;
  for (const auto& iv : region.intervals) {
    const double len = iv.b - iv.a;
    region.total_length += len;
    moment += 0.5 * (iv.a + iv.b) * len;
  }
  if (region.intervals.empty() || !(region.total_length > 0.0)) {
    throw Error(Errc::EmptySlice, "no sublevel points on the slice line");
  }
  region.centroid_param = moment / region.total_length;
  return region;
}

Vector slice_centroid_direction(const Objective& obj, const Vector& z, const SliceParams& params) {
  require_planar(obj, z);
  const Frame frame = build_normal_aligned_frame(obj.gradient(z));
  const double c = -params.delta;
  const SliceRegion region = slice_region_2d(obj, z, c, params);
  const Vector centroid =
      z + (c / frame.grad_norm) * frame.normal() + region.centroid_param * frame.q.col(0);
  Vector d = (z - centroid) / params.delta;
  const double normal_component = d.dot(frame.normal());
  if (normal_component < 0.0) d /= -normal_component;
  return d;
}

}  // namespace yand
