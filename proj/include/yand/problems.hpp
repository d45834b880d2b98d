#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "yand/objective.hpp"

namespace yand {

struct Problem {
  std::string name;
  Objective objective;
  Vector x0;
  std::optional<Vector> x_star;
  std::optional<double> f_star;
  std::string notes;
  /// Axis-aligned box used when sampling test points; samples outside the
  /// domain are rejected.
  Vector sample_lo;
  Vector sample_hi;
};

struct AffineScalingSpec {
  double gamma = 1.0;
  Matrix b;  ///< diag(1, gamma)
};

/// Names accepted by catalog(), in a stable order. "affine_scaled:<gamma>"
/// is also accepted but not listed.
const std::vector<std::string>& catalog_names();

/// Throws Errc::UnknownProblem for names not in the catalog.
Problem catalog(const std::string& name);

/// f(x) = 1/2 x^T A x + b^T x. A must be symmetric positive definite; the
/// minimizer and optimal value are filled in.
Problem make_quadratic(std::string name, const Matrix& a, const Vector& b, const Vector& x0);

/// f_gamma(x) = 1/2 (x1^2 + gamma^2 x2^2) = phi(diag(1, gamma) x) with
/// phi(y) = |y|^2 / 2, started from (1, 1).
std::pair<Problem, AffineScalingSpec> make_affine_scaled(double gamma);

/// Closed-form minimizer of the inverse-barrier problem on its symmetry line.
std::pair<Vector, double> inverse_barrier_optimum();

/// Uniform samples from the problem's box, restricted to its domain.
std::vector<Vector> sample_points(const Problem& problem, int count, std::mt19937_64& rng);

}  // namespace yand
