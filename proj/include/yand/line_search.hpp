#pragma once

#include <functional>
#include <string_view>
#include <variant>

#include "yand/numerics.hpp"

namespace yand {

/// Golden-section minimization of phi on [0, alpha_max].
struct ExactSpec {
  double alpha_max = 10.0;
  double tol = 1e-10;
};

enum class BBVariant { BB1, BB2 };

/// Backtracking alpha = beta^m alpha0 until phi(alpha) <= phi(0) + sigma alpha phi'(0).
struct ArmijoSpec {
  double sigma = 1e-4;
  double beta = 0.5;
  double alpha0 = 1.0;
  bool use_bb = false;
  BBVariant bb_variant = BBVariant::BB1;
  double alpha_min_bb = 1e-8;
  double alpha_max_bb = 1e4;
};

struct StrongWolfeSpec {
  double c1 = 1e-4;
  double c2 = 0.9;
  double alpha0 = 1.0;
  double alpha_max = 10.0;
  int max_zoom = 50;
};

using LineSearchSpec = std::variant<ExactSpec, ArmijoSpec, StrongWolfeSpec>;

/// Throws Errc::InvalidArgument when a parameter is outside its range.
void validate(const LineSearchSpec& spec);

enum class LineSearchStatus { Accepted, MaxBacktracks, ZoomFailed };
std::string_view to_string(LineSearchStatus s) noexcept;

struct LineSearchResult {
  double alpha = 0.0;
  double f_new = 0.0;
  int evals = 0;
  LineSearchStatus status = LineSearchStatus::Accepted;
};

using ScalarFn = std::function<double(double)>;

inline constexpr int kMaxBacktracks = 60;

/// Shrinks U from alpha_max by halving until phi(U) is finite, then runs
/// golden-section on [0, U] to width tol. The bracket midpoint is polished by
/// one parabolic step through a symmetric three-point stencil, kept unless it
/// raises phi. Throws Errc::NoFiniteStep.
LineSearchResult exact_search(const ScalarFn& phi, double alpha_max, double tol = 1e-10);

/// Throws Errc::NotDescent when dphi0 >= 0. phi0 is phi(0).
LineSearchResult armijo_backtrack(const ScalarFn& phi, double phi0, double dphi0,
                                  const ArmijoSpec& spec);

/// Bracketing phase doubles alpha from alpha0 (capped at alpha_max); the zoom
/// phase bisects, taking a quadratic-interpolation point when it lies in the
/// middle 80% of the bracket. Throws Errc::NotDescent.
LineSearchResult strong_wolfe_search(const ScalarFn& phi, const ScalarFn& dphi, double phi0,
                                     double dphi0, const StrongWolfeSpec& spec);

/// BB1 = s's / s'y, BB2 = s'y / y'y when s'y > 0, clamped to
/// [alpha_min_bb, alpha_max_bb]; 1 otherwise.
double bb_initial_step(const Vector& s_prev, const Vector& y_prev, BBVariant variant,
                       double alpha_min_bb = 1e-8, double alpha_max_bb = 1e4);

inline constexpr double kPostHocSlack = 1e-12;

/// Post-hoc checks; slack is relative to max(1, |phi0|) resp. max(1, |dphi0|).
bool armijo_holds(double phi0, double dphi0, double alpha, double phi_alpha, double sigma,
                  double slack = kPostHocSlack);
bool strong_wolfe_holds(double phi0, double dphi0, double alpha, double phi_alpha,
                        double dphi_alpha, double c1, double c2, double slack = kPostHocSlack);

}  // namespace yand
