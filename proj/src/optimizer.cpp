#include "yand/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yand/error.hpp"

namespace yand {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::YAND: return "YAND";
    case Method::GradientDescent: return "GradientDescent";
    case Method::Newton: return "Newton";
    case Method::DampedNewton: return "DampedNewton";
  }
  return "Unknown";
}

std::string_view to_string(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIterReached: return "MaxIterReached";
    case RunStatus::LineSearchFailure: return "LineSearchFailure";
    case RunStatus::DegenerateStop: return "DegenerateStop";
  }
  return "Unknown";
}

namespace {

struct Step {
  Vector d;
  std::optional<DirectionCase> direction_case;
  double tangential_norm = 0.0;
  double cos_theta = 1.0;
};

Step compute_direction(const Objective& obj, const Vector& x, const Vector& g, Method method) {
  Step step;
  switch (method) {
    case Method::YAND: {
      DirectionResult dr = descent_direction(obj, x);
      step.d = std::move(dr.d);
      step.direction_case = dr.direction_case;
      step.tangential_norm = dr.tangential_norm;
      step.cos_theta = dr.cos_theta;
      return step;
    }
    case Method::GradientDescent:
      step.d = -g;
      step.direction_case = DirectionCase::SteepestFallback;
      return step;
    case Method::Newton:
    case Method::DampedNewton: {
      step.d = newton_direction(obj, x, method == Method::DampedNewton);
      const DirectionGeometry geo = direction_geometry(g, step.d);
      step.tangential_norm = geo.tangential_norm;
      step.cos_theta = geo.cos_theta;
      return step;
    }
  }
  return step;
}

}  // namespace

RunReport run_method(const Objective& obj, const Vector& x0, Method method, const StepRule& rule,
                     const StoppingSpec& stop) {
  if (!(stop.tol_grad > 0.0) || stop.max_iter <= 0) {
    throw Error(Errc::InvalidArgument, "stopping parameters must be positive");
  }
  if (!obj.in_domain(x0)) throw Error(Errc::DomainViolation, "start point outside the domain");
  std::visit(
      [](const auto& r) {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, FixedStep>) {
          if (!(r.alpha > 0.0)) throw Error(Errc::InvalidArgument, "fixed step must be positive");
        } else {
          validate(LineSearchSpec{r});
        }
      },
      rule);

  RunReport report;
  report.method = method;
  report.step = rule;
  report.stop = stop;

  Vector x = x0;
  double f = obj.value(x);
  Vector g = obj.gradient(x);
  IterateRecord first;
  first.x = x;
  first.f = f;
  first.grad_norm = g.norm();
  report.records.push_back(std::move(first));

  std::optional<Vector> s_prev, y_prev;

  while (true) {
    const double gn = g.norm();
    if (gn <= stop.tol_grad) {
      report.status = RunStatus::Converged;
      break;
    }
    if (report.iters >= stop.max_iter) {
      report.status = RunStatus::MaxIterReached;
      break;
    }

    Step step;
    try {
      step = compute_direction(obj, x, g, method);
    } catch (const Error& e) {
      if (e.code() == Errc::ZeroGradient || e.code() == Errc::SingularHessian) {
        report.status = RunStatus::DegenerateStop;
        break;
      }
      throw;
    }
    if (!step.d.allFinite()) {
      report.status = RunStatus::DegenerateStop;
      break;
    }
    const Vector& d = step.d;
    const double slope = g.dot(d);
    const ScalarFn phi = [&](double a) { return obj.value(x + a * d); };

    LineSearchResult ls;
    bool accepted = false;
    try {
      std::visit(
          [&](const auto& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, ExactSpec>) {
              ls = exact_search(phi, r.alpha_max, r.tol);
            } else if constexpr (std::is_same_v<R, ArmijoSpec>) {
              ArmijoSpec spec = r;
              if (spec.use_bb && s_prev) {
                spec.alpha0 = bb_initial_step(*s_prev, *y_prev, spec.bb_variant,
                                              spec.alpha_min_bb, spec.alpha_max_bb);
              }
              ls = armijo_backtrack(phi, f, slope, spec);
            } else if constexpr (std::is_same_v<R, StrongWolfeSpec>) {
              const ScalarFn dphi = [&](double a) {
                const Vector y = x + a * d;
                if (!obj.in_domain(y)) return std::numeric_limits<double>::quiet_NaN();
                return obj.gradient(y).dot(d);
              };
              ls = strong_wolfe_search(phi, dphi, f, slope, r);
            } else {
              ls.alpha = r.alpha;
              ls.f_new = phi(r.alpha);
              ls.evals = 1;
              ls.status = std::isfinite(ls.f_new) && ls.f_new < f
                              ? LineSearchStatus::Accepted
                              : LineSearchStatus::MaxBacktracks;
            }
          },
          rule);
      accepted = ls.status == LineSearchStatus::Accepted;
    } catch (const Error& e) {
      if (e.code() != Errc::NotDescent && e.code() != Errc::NoFiniteStep) throw;
    }
    report.line_search_evals += ls.evals;
    if (!accepted) {
      report.status = RunStatus::LineSearchFailure;
      break;
    }

    const Vector x_new = x + ls.alpha * d;
    const double f_new = obj.value(x_new);
    const Vector g_new = obj.gradient(x_new);
    s_prev = x_new - x;
    y_prev = g_new - g;

    ++report.iters;
    IterateRecord rec;
    rec.k = report.iters;
    rec.x = x_new;
    rec.f = f_new;
    rec.grad_norm = g_new.norm();
    rec.alpha = ls.alpha;
    rec.direction_case = step.direction_case;
    rec.tangential_norm = step.tangential_norm;
    rec.cos_theta = step.cos_theta;
    rec.direction = d;
    rec.slope = slope;
    report.records.push_back(std::move(rec));
    if (std::isfinite(step.tangential_norm)) {
      report.max_tangential_norm = std::max(report.max_tangential_norm, step.tangential_norm);
    }

    x = x_new;
    f = f_new;
    g = g_new;
  }
  return report;
}

RunReport yand_run(const Problem& problem, const StepRule& step, const StoppingSpec& stop) {
  return run_method(problem.objective, problem.x0, Method::YAND, step, stop);
}

RunReport gradient_descent_run(const Problem& problem, const StepRule& step,
                               const StoppingSpec& stop) {
  return run_method(problem.objective, problem.x0, Method::GradientDescent, step, stop);
}

RunReport newton_run(const Problem& problem, bool damped, const StepRule& step,
                     const StoppingSpec& stop) {
  return run_method(problem.objective, problem.x0, damped ? Method::DampedNewton : Method::Newton,
                    step, stop);
}

RateTable empirical_rates(const RunReport& report, const std::optional<Vector>& x_star,
                          const std::optional<double>& f_star) {
  if (!x_star && !f_star) throw Error(Errc::MissingReference, "no reference optimum given");
  if (report.records.empty()) throw Error(Errc::InvalidArgument, "empty run report");
  RateTable table;
  const auto& recs = report.records;
  for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
    if (f_star) {
      const double den = recs[k].f - *f_star;
      table.linear.push_back(den != 0.0 ? (recs[k + 1].f - *f_star) / den
                                        : std::numeric_limits<double>::quiet_NaN());
    }
    if (x_star) {
      const double e0 = (recs[k].x - *x_star).norm();
      const double e1 = (recs[k + 1].x - *x_star).norm();
      table.quadratic.push_back(e0 != 0.0 ? e1 / (e0 * e0)
                                          : std::numeric_limits<double>::quiet_NaN());
    }
  }
  return table;
}

}  // namespace yand
