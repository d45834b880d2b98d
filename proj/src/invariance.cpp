#include "yand/invariance.hpp"

#include <algorithm>
#include <cmath>

#include "yand/error.hpp"

namespace yand {

double InvarianceReport::max_deviation_first(std::size_t count) const {
  double m = 0.0;
  const std::size_t n = std::min(count, per_iterate_deviation.size());
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, per_iterate_deviation[k]);
  return m;
}

namespace {

void require_positive_det(const Matrix& b) {
  if (b.rows() != b.cols() || b.rows() == 0) {
    throw Error(Errc::SingularB, "B must be square");
  }
  const Eigen::PartialPivLU<Matrix> lu(b);
  const double det = lu.determinant();
  if (!(det > 0.0) || !std::isfinite(det)) throw Error(Errc::SingularB, "det(B) must be positive");
}

int count_non_an(const RunReport& run) {
  int n = 0;
  for (const auto& rec : run.records) {
    if (rec.direction_case && *rec.direction_case != DirectionCase::AN) ++n;
  }
  return n;
}

}  // namespace

InvarianceReport run_invariance(const Problem& base, const Matrix& b, const LineSearchSpec& ls,
                                const StoppingSpec& stop) {
  require_positive_det(b);
  if (b.rows() != base.objective.dim()) {
    throw Error(Errc::InvalidArgument, "B does not match the problem dimension");
  }
  const Objective scaled = compose_linear(base.objective, b);
  const Vector x0 = b.partialPivLu().solve(base.x0);
  const StepRule rule = std::visit([](const auto& s) { return StepRule{s}; }, ls);

  const RunReport run_scaled = run_method(scaled, x0, Method::YAND, rule, stop);
  const RunReport run_base = run_method(base.objective, base.x0, Method::YAND, rule, stop);

  InvarianceReport report;
  report.gamma = b.rows() >= 2 ? b(1, 1) / b(0, 0) : 1.0;
  report.iters_scaled = run_scaled.iters;
  report.iters_base = run_base.iters;
  report.status_scaled = run_scaled.status;
  report.status_base = run_base.status;
  report.non_an_steps = count_non_an(run_scaled) + count_non_an(run_base);
  const std::size_t n = std::min(run_scaled.records.size(), run_base.records.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double dev = (b * run_scaled.records[k].x - run_base.records[k].x).norm();
    report.per_iterate_deviation.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

double direction_covariance_angle(const Objective& phi, const Matrix& b, const Vector& x) {
  require_positive_det(b);
  const Objective scaled = compose_linear(phi, b);
  const Vector d_f = descent_direction(scaled, x).d;
  const Vector d_phi = descent_direction(phi, b * x).d;
  return angle_between(b * d_f, d_phi);
}

}  // namespace yand
