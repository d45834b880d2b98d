#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "yand/direction.hpp"
#include "yand/line_search.hpp"
#include "yand/problems.hpp"

namespace yand {

struct StoppingSpec {
  double tol_grad = 1e-4;
  int max_iter = 200;
};

struct FixedStep {
  double alpha = 1.0;
};

using StepRule = std::variant<ExactSpec, ArmijoSpec, StrongWolfeSpec, FixedStep>;

enum class Method { YAND, GradientDescent, Newton, DampedNewton };
enum class RunStatus { Converged, MaxIterReached, LineSearchFailure, DegenerateStop };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(RunStatus s) noexcept;

/// State after k accepted steps. Step fields (alpha, direction and its
/// geometry) describe the step that produced x; they are empty at k = 0.
struct IterateRecord {
  int k = 0;
  Vector x;
  double f = 0.0;
  double grad_norm = 0.0;
  double alpha = 0.0;
  std::optional<DirectionCase> direction_case;
  double tangential_norm = 0.0;
  double cos_theta = 1.0;
  Vector direction;
  double slope = 0.0;  ///< <grad f(x_{k-1}), d>
};

struct RunReport {
  Method method = Method::YAND;
  StepRule step;
  StoppingSpec stop;
  std::vector<IterateRecord> records;
  RunStatus status = RunStatus::MaxIterReached;
  int iters = 0;
  double max_tangential_norm = 0.0;
  int line_search_evals = 0;

  const IterateRecord& final() const { return records.back(); }
};

/// Runs from x0 on an arbitrary objective; failures are encoded in status.
RunReport run_method(const Objective& obj, const Vector& x0, Method method, const StepRule& step,
                     const StoppingSpec& stop = {});

RunReport yand_run(const Problem& problem, const StepRule& step, const StoppingSpec& stop = {});
RunReport gradient_descent_run(const Problem& problem, const StepRule& step,
                               const StoppingSpec& stop = {});
/// Undamped Newton takes FixedStep{1} by default. Damped Newton regularizes
/// indefinite Hessians and should be paired with a line search.
RunReport newton_run(const Problem& problem, bool damped, const StepRule& step = FixedStep{1.0},
                     const StoppingSpec& stop = {});

struct RateTable {
  std::vector<double> linear;     ///< (f_{k+1} - f*) / (f_k - f*)
  std::vector<double> quadratic;  ///< |e_{k+1}| / |e_k|^2
};

/// Per-step convergence ratios; each list is empty when its reference is
/// absent. Throws Errc::MissingReference when both are absent.
RateTable empirical_rates(const RunReport& report, const std::optional<Vector>& x_star,
                          const std::optional<double>& f_star);

}  // namespace yand
