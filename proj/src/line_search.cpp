#include "yand/line_search.hpp"

#include <algorithm>
#include <cmath>

#include "yand/error.hpp"

namespace yand {

std::string_view to_string(LineSearchStatus s) noexcept {
  switch (s) {
    case LineSearchStatus::Accepted: return "Accepted";
    case LineSearchStatus::MaxBacktracks: return "MaxBacktracks";
    case LineSearchStatus::ZoomFailed: return "ZoomFailed";
  }
  return "Unknown";
}

void validate(const LineSearchSpec& spec) {
  std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        bool ok = true;
        if constexpr (std::is_same_v<S, ExactSpec>) {
          ok = s.alpha_max > 0.0 && s.tol > 0.0;
        } else if constexpr (std::is_same_v<S, ArmijoSpec>) {
          ok = s.sigma > 0.0 && s.sigma < 1.0 && s.beta > 0.0 && s.beta < 1.0 && s.alpha0 > 0.0 &&
               s.alpha_min_bb > 0.0 && s.alpha_min_bb < s.alpha_max_bb;
        } else {
          ok = s.c1 > 0.0 && s.c1 < s.c2 && s.c2 < 1.0 && s.alpha0 > 0.0 &&
               s.alpha_max >= s.alpha0 && s.max_zoom > 0;
        }
        if (!ok) throw Error(Errc::InvalidArgument, "line-search parameters out of range");
      },
      spec);
}

namespace {

// Vertex of the parabola through three points, or NaN when the fit is not convex.
double parabola_vertex(double a, double fa, double b, double fb, double c, double fc) {
  const double p = (b - a) * (fb - fc);
  const double q = (b - c) * (fb - fa);
  const double denom = p - q;
  const double curvature =
      fa / ((a - b) * (a - c)) + fb / ((b - a) * (b - c)) + fc / ((c - a) * (c - b));
  if (!(curvature > 0.0) || denom == 0.0) return std::nan("");
  return b - 0.5 * ((b - a) * p - (b - c) * q) / denom;
}

}  // namespace

LineSearchResult exact_search(const ScalarFn& phi, double alpha_max, double tol) {
  if (!(alpha_max > 0.0) || !(tol > 0.0)) {
    throw Error(Errc::InvalidArgument, "exact search needs alpha_max > 0 and tol > 0");
  }
  LineSearchResult out;
  const auto eval = [&](double a) {
    ++out.evals;
    return phi(a);
  };
  const double phi0 = eval(0.0);
  if (!std::isfinite(phi0)) throw Error(Errc::InvalidArgument, "phi(0) is not finite");

  double upper = alpha_max;
  double f_upper = eval(upper);
  while (!std::isfinite(f_upper)) {
    upper *= 0.5;
    if (upper < 1e-300) throw Error(Errc::NoFiniteStep, "no finite trial step in (0, alpha_max]");
    f_upper = eval(upper);
  }

  constexpr double kInvPhi = 0.6180339887498948482;
  double a = 0.0, b = upper;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  double alpha = 0.5 * (a + b);
  double f_alpha = eval(alpha);

  // Parabolic polish; exact for quadratic phi.
  const double h = std::max(10.0 * tol, 1e-6 * std::max(1.0, alpha));
  const double lo = std::max(0.0, alpha - h);
  const double hi = std::min(upper, alpha + h);
  if (lo < alpha && alpha < hi) {
    const double vertex = parabola_vertex(lo, eval(lo), alpha, f_alpha, hi, eval(hi));
    if (std::isfinite(vertex) && vertex > 0.0 && vertex <= upper) {
      const double f_vertex = eval(vertex);
      if (f_vertex <= f_alpha) {
        alpha = vertex;
        f_alpha = f_vertex;
      }
    }
  }

  // Non-unimodal phi can leave the bracket above phi(0); backtrack to a
  // decreasing step in that case.
  int m = 0;
  while (!(f_alpha < phi0) && m < kMaxBacktracks) {
    alpha *= 0.5;
    f_alpha = eval(alpha);
    ++m;
  }
  out.alpha = alpha;
  out.f_new = f_alpha;
  out.status = f_alpha < phi0 ? LineSearchStatus::Accepted : LineSearchStatus::MaxBacktracks;
  return out;
}

LineSearchResult armijo_backtrack(const ScalarFn& phi, double phi0, double dphi0,
                                  const ArmijoSpec& spec) {
  validate(spec);
  if (!(dphi0 < 0.0)) throw Error(Errc::NotDescent, "directional derivative is not negative");
  if (!std::isfinite(phi0)) throw Error(Errc::InvalidArgument, "phi(0) is not finite");

  LineSearchResult out;
  double alpha = spec.alpha0;
  for (int m = 0; m <= kMaxBacktracks; ++m, alpha *= spec.beta) {
    const double f = phi(alpha);
    ++out.evals;
    out.alpha = alpha;
    out.f_new = f;
    if (std::isfinite(f) && f <= phi0 + spec.sigma * alpha * dphi0 && f < phi0) {
      out.status = LineSearchStatus::Accepted;
      return out;
    }
  }
  out.status = LineSearchStatus::MaxBacktracks;
  return out;
}

LineSearchResult strong_wolfe_search(const ScalarFn& phi, const ScalarFn& dphi, double phi0,
                                     double dphi0, const StrongWolfeSpec& spec) {
  validate(spec);
  if (!(dphi0 < 0.0)) throw Error(Errc::NotDescent, "directional derivative is not negative");
  if (!std::isfinite(phi0)) throw Error(Errc::InvalidArgument, "phi(0) is not finite");

  LineSearchResult out;
  const auto sufficient = [&](double a, double f) {
    return std::isfinite(f) && f <= phi0 + spec.c1 * a * dphi0 && f < phi0;
  };
  const auto curvature = [&](double g) { return std::abs(g) <= -spec.c2 * dphi0; };
  const auto accept = [&](double a, double f) {
    out.alpha = a;
    out.f_new = f;
    out.status = LineSearchStatus::Accepted;
    return out;
  };

  // lo always satisfies sufficient decrease and has the lowest phi seen in
  // the bracket; phi'(lo) (hi - lo) < 0.
  const auto zoom = [&](double lo, double f_lo, double d_lo, double hi, double f_hi) {
    for (int j = 0; j < spec.max_zoom; ++j) {
      const double width = hi - lo;
      double a = lo + 0.5 * width;
      if (std::isfinite(f_hi)) {
        const double denom = 2.0 * (f_hi - f_lo - d_lo * width);
        if (denom > 0.0) {
          const double q = lo - d_lo * width * width / denom;
          const double lo_edge = lo + 0.1 * width, hi_edge = lo + 0.9 * width;
          if (q > std::min(lo_edge, hi_edge) && q < std::max(lo_edge, hi_edge)) a = q;
        }
      }
      const double f = phi(a);
      ++out.evals;
      if (!sufficient(a, f) || f >= f_lo) {
        hi = a;
        f_hi = f;
      } else {
        const double g = dphi(a);
        ++out.evals;
        if (curvature(g)) return accept(a, f);
        if (g * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = f_lo;
        }
        lo = a;
        f_lo = f;
        d_lo = g;
      }
      if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    out.alpha = lo;
    out.f_new = f_lo;
    out.status = LineSearchStatus::ZoomFailed;
    return out;
  };

  double a_prev = 0.0, f_prev = phi0, d_prev = dphi0;
  double a = std::min(spec.alpha0, spec.alpha_max);
  for (int i = 0; i < kMaxBacktracks; ++i) {
    const double f = phi(a);
    ++out.evals;
    if (!sufficient(a, f) || (i > 0 && f >= f_prev)) {
      return zoom(a_prev, f_prev, d_prev, a, f);
    }
    const double g = dphi(a);
    ++out.evals;
    if (curvature(g)) return accept(a, f);
    if (g >= 0.0) return zoom(a, f, g, a_prev, f_prev);
    if (a >= spec.alpha_max) {
      // Still descending at the cap: the point satisfies sufficient decrease
      // but not the curvature condition.
      out.alpha = a;
      out.f_new = f;
      out.status = LineSearchStatus::ZoomFailed;
      return out;
    }
    a_prev = a;
    f_prev = f;
    d_prev = g;
    a = std::min(2.0 * a, spec.alpha_max);
  }
  out.alpha = a_prev;
  out.f_new = f_prev;
  out.status = LineSearchStatus::ZoomFailed;
  return out;
}

double bb_initial_step(const Vector& s_prev, const Vector& y_prev, BBVariant variant,
                       double alpha_min_bb, double alpha_max_bb) {
  if (s_prev.size() != y_prev.size()) {
    throw Error(Errc::InvalidArgument, "BB vectors must have equal dimension");
  }
  const double sy = s_prev.dot(y_prev);
  if (!(sy > 0.0)) return 1.0;
  const double raw = variant == BBVariant::BB1 ? s_prev.squaredNorm() / sy
                                               : sy / y_prev.squaredNorm();
  return std::clamp(raw, alpha_min_bb, alpha_max_bb);
}

bool armijo_holds(double phi0, double dphi0, double alpha, double phi_alpha, double sigma,
                  double slack) {
  return std::isfinite(phi_alpha) &&
         phi_alpha <= phi0 + sigma * alpha * dphi0 + slack * std::max(1.0, std::abs(phi0));
}

bool strong_wolfe_holds(double phi0, double dphi0, double alpha, double phi_alpha,
                        double dphi_alpha, double c1, double c2, double slack) {
  return armijo_holds(phi0, dphi0, alpha, phi_alpha, c1, slack) &&
         std::abs(dphi_alpha) <= c2 * std::abs(dphi0) + slack * std::max(1.0, std::abs(dphi0));
}

}  // namespace yand
