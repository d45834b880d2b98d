#include "yand/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "yand/error.hpp"

namespace yand {

Objective::Objective(int dim, ValueFn value, GradientFn gradient, HessianFn hessian,
                     ThirdFn third, Predicate in_domain)
    : dim_(dim),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)),
      third_(std::move(third)),
      in_domain_(std::move(in_domain)) {
  if (dim_ < 1) throw Error(Errc::InvalidArgument, "objective dimension must be positive");
}

bool Objective::in_domain(const Vector& x) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  return !in_domain_ || in_domain_(x);
}

void Objective::require_domain(const Vector& x) const {
  if (!in_domain(x)) throw Error(Errc::DomainViolation, "point outside the objective domain");
}

double Objective::value(const Vector& x) const {
  if (!in_domain(x)) return std::numeric_limits<double>::infinity();
  return value_(x);
}

Vector Objective::gradient(const Vector& x) const {
  require_domain(x);
  return gradient_(x);
}

Matrix Objective::hessian(const Vector& x) const {
  require_domain(x);
  return hessian_(x);
}

double Objective::third_directional(const Vector& x, const Vector& u, const Vector& v,
                                    const Vector& w) const {
  require_domain(x);
  return third_(x, u, v, w);
}

Objective compose_linear(const Objective& phi, const Matrix& b) {
  if (b.rows() != phi.dim() || b.cols() != phi.dim()) {
    throw Error(Errc::InvalidArgument, "scaling matrix must match the base dimension");
  }
  return Objective(
      phi.dim(), [phi, b](const Vector& x) { return phi.value(b * x); },
      [phi, b](const Vector& x) -> Vector { return b.transpose() * phi.gradient(b * x); },
      [phi, b](const Vector& x) -> Matrix {
        return b.transpose() * phi.hessian(b * x) * b;
      },
      [phi, b](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return phi.third_directional(b * x, b * u, b * v, b * w);
      },
      [phi, b](const Vector& x) { return phi.in_domain(b * x); });
}

namespace {

double eval_checked(const Objective& obj, const Vector& x) {
  const double f = obj.value(x);
  if (!std::isfinite(f)) throw Error(Errc::DomainViolation, "stencil point infeasible");
  return f;
}

}  // namespace

Vector fd_gradient(const Objective& obj, const Vector& x, double h) {
  Vector g(x.size());
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double fp = eval_checked(obj, xp);
    xp(i) = x(i) - h;
    const double fm = eval_checked(obj, xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

Matrix fd_hessian(const Objective& obj, const Vector& x, double h) {
  const Eigen::Index m = x.size();
  Matrix hess(m, m);
  const double f0 = eval_checked(obj, x);
  Vector y = x;
  for (Eigen::Index i = 0; i < m; ++i) {
    y(i) = x(i) + h;
    const double fp = eval_checked(obj, y);
    y(i) = x(i) - h;
    const double fm = eval_checked(obj, y);
    y(i) = x(i);
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      double acc = 0.0;
      for (const auto& [si, sj] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}, {-1.0, -1.0}}) {
        y(i) = x(i) + si * h;
        y(j) = x(j) + sj * h;
        acc += si * sj * eval_checked(obj, y);
      }
      y(i) = x(i);
      y(j) = x(j);
      hess(i, j) = hess(j, i) = acc / (4.0 * h * h);
    }
  }
  return hess;
}

double fd_third_directional(const Objective& obj, const Vector& x, const Vector& u,
                            const Vector& v, const Vector& w, double h) {
  const Vector xp = x + h * w;
  const Vector xm = x - h * w;
  if (!obj.in_domain(xp) || !obj.in_domain(xm)) {
    throw Error(Errc::DomainViolation, "stencil point infeasible");
  }
  const double qp = u.dot(obj.hessian(xp) * v);
  const double qm = u.dot(obj.hessian(xm) * v);
  return (qp - qm) / (2.0 * h);
}

DerivativeReport verify_derivatives(const Objective& obj, std::span<const Vector> points,
                                    std::uint64_t seed) {
  DerivativeReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto unit = [&] {
    Vector u(obj.dim());
    for (auto& c : u) c = normal(rng);
    return Vector(u / u.norm());
  };

  for (const Vector& x : points) {
    const Vector g = obj.gradient(x);
    const Vector g_fd = fd_gradient(obj, x, 1e-5);
    report.max_rel_err_grad =
        std::max(report.max_rel_err_grad, (g - g_fd).lpNorm<Eigen::Infinity>() /
                                              std::max(1.0, g.lpNorm<Eigen::Infinity>()));

    const Matrix hess = obj.hessian(x);
    const Matrix h_fd = fd_hessian(obj, x, 1e-4);
    report.max_rel_err_hess =
        std::max(report.max_rel_err_hess, (hess - h_fd).cwiseAbs().maxCoeff() /
                                              std::max(1.0, hess.cwiseAbs().maxCoeff()));

    for (int k = 0; k < 10; ++k) {
      const Vector u = unit();
      const Vector v = unit();
      const Vector w = unit();
      const double t = obj.third_directional(x, u, v, w);
      const double t_fd = fd_third_directional(obj, x, u, v, w, 1e-3);
      report.max_rel_err_third =
          std::max(report.max_rel_err_third, std::abs(t - t_fd) / std::max(1.0, std::abs(t)));
    }
    ++report.points_checked;
  }
  return report;
}

bool within(const DerivativeReport& report, const DerivativeTolerances& tol) {
  return report.max_rel_err_grad <= tol.grad && report.max_rel_err_hess <= tol.hess &&
         report.max_rel_err_third <= tol.third;
}

}  // namespace yand
