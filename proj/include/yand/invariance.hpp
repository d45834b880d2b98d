#pragma once

#include <vector>

#include "yand/line_search.hpp"
#include "yand/optimizer.hpp"
#include "yand/problems.hpp"

namespace yand {

struct InvarianceReport {
  double gamma = 1.0;  ///< B(1,1) / B(0,0) for diagonal B
  /// |B x_k - y_k| for k up to min(iters_scaled, iters_base).
  std::vector<double> per_iterate_deviation;
  double max_deviation = 0.0;
  int iters_scaled = 0;
  int iters_base = 0;
  /// Steps on either trajectory whose direction was not the plain affine normal.
  int non_an_steps = 0;
  RunStatus status_scaled = RunStatus::Converged;
  RunStatus status_base = RunStatus::Converged;

  /// Largest deviation over the first `count` mapped iterates.
  double max_deviation_first(std::size_t count) const;
};

/// Runs YAND on f(x) = phi(B x) from B^{-1} y0 and on phi from y0, where phi
/// and y0 come from `base`. Throws Errc::SingularB unless B is square with
/// det(B) > 0.
InvarianceReport run_invariance(const Problem& base, const Matrix& b, const LineSearchSpec& ls,
                                const StoppingSpec& stop = {});

/// Angle between B d_f(x) and d_phi(B x).
double direction_covariance_angle(const Objective& phi, const Matrix& b, const Vector& x);

}  // namespace yand
