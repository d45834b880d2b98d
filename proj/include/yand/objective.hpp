#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "yand/numerics.hpp"

namespace yand {

/// Smooth objective on an open domain of R^{n+1} with analytic derivatives
/// through third order. value() returns +inf outside the domain; the
/// derivative evaluators throw Errc::DomainViolation there.
class Objective {
 public:
  using Predicate = std::function<bool(const Vector&)>;
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;
  /// D^3 f(x)[u, v, w].
  using ThirdFn =
      std::function<double(const Vector&, const Vector&, const Vector&, const Vector&)>;

  Objective() = default;
  Objective(int dim, ValueFn value, GradientFn gradient, HessianFn hessian, ThirdFn third,
            Predicate in_domain = {});

  int dim() const { return dim_; }
  bool in_domain(const Vector& x) const;

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
  double third_directional(const Vector& x, const Vector& u, const Vector& v,
                           const Vector& w) const;

 private:
  void require_domain(const Vector& x) const;

  int dim_ = 0;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
  ThirdFn third_;
  Predicate in_domain_;
};

/// f(x) = phi(B x) with derivatives by the chain rule.
Objective compose_linear(const Objective& phi, const Matrix& b);

Vector fd_gradient(const Objective& obj, const Vector& x, double h);
Matrix fd_hessian(const Objective& obj, const Vector& x, double h);
/// Central difference of u^T H(x + s w) v in s, using the analytic Hessian.
double fd_third_directional(const Objective& obj, const Vector& x, const Vector& u,
                            const Vector& v, const Vector& w, double h);

struct DerivativeReport {
  double max_rel_err_grad = 0.0;
  double max_rel_err_hess = 0.0;
  double max_rel_err_third = 0.0;
  int points_checked = 0;
};

struct DerivativeTolerances {
  double grad = 1e-7;
  double hess = 1e-5;
  double third = 1e-3;
};

/// Compares the analytic derivatives against central differences (h = 1e-5,
/// 1e-4, 1e-3 by order) at each point, with 10 random unit direction triples
/// per point for the third derivative. Errors are relative:
/// |analytic - fd| / max(1, |analytic|), in the max norm for vectors/matrices.
DerivativeReport verify_derivatives(const Objective& obj, std::span<const Vector> points,
                                    std::uint64_t seed = 42);

bool within(const DerivativeReport& report, const DerivativeTolerances& tol = {});

}  // namespace yand
