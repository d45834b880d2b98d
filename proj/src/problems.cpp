#include "yand/problems.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "yand/error.hpp"

namespace yand {
namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double c : values) v(i++) = c;
  return v;
}

Vector box(int dim, double c) { return Vector::Constant(dim, c); }

double zero_third(const Vector&, const Vector&, const Vector&, const Vector&) { return 0.0; }

// Newton iteration with backtracking on |grad|, used to pin reference optima
// that have no closed form.
Vector polish_stationary(const Objective& obj, Vector x) {
  for (int it = 0; it < 100; ++it) {
    const Vector g = obj.gradient(x);
    const double gn = g.norm();
    if (gn <= 1e-13) break;
    const Vector step = obj.hessian(x).partialPivLu().solve(-g);
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const Vector trial = x + t * step;
      if (obj.in_domain(trial) && obj.gradient(trial).norm() < gn) {
        x = trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return x;
}

void check_optimum(const Problem& p) {
  if (!p.objective.in_domain(p.x0)) {
    throw Error(Errc::InvalidArgument, p.name + ": start point outside the domain");
  }
  if (p.x_star && p.objective.gradient(*p.x_star).norm() > 1e-8) {
    throw Error(Errc::InvalidArgument, p.name + ": reference optimum is not stationary");
  }
}

Problem finish(Problem p) {
  check_optimum(p);
  return p;
}

Problem with_polished_optimum(Problem p, const Vector& guess) {
  const Vector x = polish_stationary(p.objective, guess);
  p.x_star = x;
  p.f_star = p.objective.value(x);
  return finish(std::move(p));
}

Problem convex_53() {
  Objective obj(
      2,
      [](const Vector& x) {
        return 0.5 * x(0) * x(0) + 2.0 * x(1) * x(1) + std::pow(x(0), 4) / 12.0;
      },
      [](const Vector& x) { return vec({x(0) + std::pow(x(0), 3) / 3.0, 4.0 * x(1)}); },
      [](const Vector& x) -> Matrix {
        return vec({1.0 + x(0) * x(0), 4.0}).asDiagonal();
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 2.0 * x(0) * u(0) * v(0) * w(0);
      });
  return finish({"convex_53", std::move(obj), vec({1.0, 1.0}), vec({0.0, 0.0}), 0.0,
                 "1/2 x^2 + 2 y^2 + x^4/12, strictly convex non-quadratic", box(2, -2), box(2, 2)});
}

Problem poly6() {
  static const Matrix q2 = vec({2.0, 8.0}).asDiagonal();
  const auto grad_q = [](const Vector& x) { return vec({2.0 * x(0), 8.0 * x(1)}); };
  const auto q = [](const Vector& x) { return x(0) * x(0) + 4.0 * x(1) * x(1); };
  Objective obj(
      2,
      [q](const Vector& x) {
        return std::pow(q(x), 3) + 0.1 * x.squaredNorm() + 0.01 * (x(0) + 2.0 * x(1));
      },
      [q, grad_q](const Vector& x) -> Vector {
        return 3.0 * q(x) * q(x) * grad_q(x) + 0.2 * x + vec({0.01, 0.02});
      },
      [q, grad_q](const Vector& x) -> Matrix {
        const Vector dq = grad_q(x);
        const double qx = q(x);
        return 6.0 * qx * dq * dq.transpose() + 3.0 * qx * qx * q2 +
               0.2 * Matrix::Identity(2, 2);
      },
      [q, grad_q](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        const Vector dq = grad_q(x);
        const double a = dq.dot(u), b = dq.dot(v), c = dq.dot(w);
        return 6.0 * a * b * c +
               6.0 * q(x) * (u.dot(q2 * v) * c + u.dot(q2 * w) * b + v.dot(q2 * w) * a);
      });
  return with_polished_optimum({"poly6", std::move(obj), vec({0.5, -0.5}), {}, {},
                                "(x1^2 + 4 x2^2)^3 + 0.1 |x|^2 + 0.01 (x1 + 2 x2)",
                                box(2, -1), box(2, 1)},
                               vec({0.0, 0.0}));
}

Problem inverse_barrier() {
  const auto gap = [](const Vector& x) { return 1.0 - x(0) - x(1); };
  Objective obj(
      2, [gap](const Vector& x) { return 0.5 * x.squaredNorm() + 1.0 / gap(x); },
      [gap](const Vector& x) -> Vector {
        const double r = gap(x);
        return x + Vector::Constant(2, 1.0 / (r * r));
      },
      [gap](const Vector& x) -> Matrix {
        const double r = gap(x);
        return Matrix::Identity(2, 2) + Matrix::Constant(2, 2, 2.0 / (r * r * r));
      },
      [gap](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        const double r = gap(x);
        return 6.0 / (r * r * r * r) * u.sum() * v.sum() * w.sum();
      },
      [](const Vector& x) { return x(0) + x(1) < 1.0; });
  auto [x_star, f_star] = inverse_barrier_optimum();
  return finish({"inverse_barrier", std::move(obj), vec({0.01, 0.98}), x_star, f_star,
                 "1/2 |x|^2 + 1/(1 - x1 - x2) on x1 + x2 < 1", box(2, -1), box(2, 0.2)});
}

Problem rosenbrock() {
  Objective obj(
      2,
      [](const Vector& x) {
        const double a = x(1) - x(0) * x(0), b = 1.0 - x(0);
        return 100.0 * a * a + b * b;
      },
      [](const Vector& x) {
        const double a = x(1) - x(0) * x(0);
        return vec({-400.0 * x(0) * a - 2.0 * (1.0 - x(0)), 200.0 * a});
      },
      [](const Vector& x) {
        Matrix h(2, 2);
        h << 1200.0 * x(0) * x(0) - 400.0 * x(1) + 2.0, -400.0 * x(0), -400.0 * x(0), 200.0;
        return h;
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 2400.0 * x(0) * u(0) * v(0) * w(0) -
               400.0 * (u(0) * v(0) * w(1) + u(0) * v(1) * w(0) + u(1) * v(0) * w(0));
      });
  return finish({"rosenbrock", std::move(obj), vec({-1.2, 1.0}), vec({1.0, 1.0}), 0.0,
                 "100 (x2 - x1^2)^2 + (1 - x1)^2", box(2, -2), box(2, 2)});
}

Problem ring_tilted() {
  Objective obj(
      2,
      [](const Vector& x) {
        const double p = x.squaredNorm() - 1.0;
        return p * p + 0.1 * x(0);
      },
      [](const Vector& x) -> Vector {
        const double p = x.squaredNorm() - 1.0;
        return 4.0 * p * x + vec({0.1, 0.0});
      },
      [](const Vector& x) -> Matrix {
        const double p = x.squaredNorm() - 1.0;
        return 8.0 * x * x.transpose() + 4.0 * p * Matrix::Identity(2, 2);
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 8.0 * (u.dot(v) * x.dot(w) + u.dot(w) * x.dot(v) + v.dot(w) * x.dot(u));
      });
  return with_polished_optimum({"ring_tilted", std::move(obj), vec({0.0, 1.5}), {}, {},
                                "(|x|^2 - 1)^2 + 0.1 x1", box(2, -2), box(2, 2)},
                               vec({-1.0125, 0.0}));
}

Problem saddle_poly() {
  Objective obj(
      2,
      [](const Vector& x) { return std::pow(x(0), 4) - x(0) * x(0) + x(1) * x(1); },
      [](const Vector& x) {
        return vec({4.0 * std::pow(x(0), 3) - 2.0 * x(0), 2.0 * x(1)});
      },
      [](const Vector& x) -> Matrix {
        return vec({12.0 * x(0) * x(0) - 2.0, 2.0}).asDiagonal();
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 24.0 * x(0) * u(0) * v(0) * w(0);
      });
  return with_polished_optimum({"saddle_poly", std::move(obj), vec({0.1, 0.2}), {}, {},
                                "x1^4 - x1^2 + x2^2, strict saddle at the origin",
                                box(2, -2), box(2, 2)},
                               vec({0.7, 0.0}));
}

Objective double_well_sum() {
  return Objective(
      2,
      [](const Vector& x) {
        const double a = x(0) * x(0) - 1.0, b = x(1) * x(1) - 1.0;
        return a * a + b * b;
      },
      [](const Vector& x) {
        return vec({4.0 * x(0) * (x(0) * x(0) - 1.0), 4.0 * x(1) * (x(1) * x(1) - 1.0)});
      },
      [](const Vector& x) -> Matrix {
        return vec({12.0 * x(0) * x(0) - 4.0, 12.0 * x(1) * x(1) - 4.0}).asDiagonal();
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 24.0 * (x(0) * u(0) * v(0) * w(0) + x(1) * u(1) * v(1) * w(1));
      });
}

Problem four_well() {
  return finish({"four_well", double_well_sum(), vec({0.1, -1.5}), vec({1.0, -1.0}), 0.0,
                 "(x1^2 - 1)^2 + (x2^2 - 1)^2; minimizers (+-1, +-1), the reference is the "
                 "one reached from the default start",
                 box(2, -2), box(2, 2)});
}

Problem counterexample() {
  Objective obj(
      2,
      [](const Vector& x) {
        const double a = x(0) * x(0) - 1.0;
        return a * a + x(1) - 1.0;
      },
      [](const Vector& x) { return vec({4.0 * x(0) * (x(0) * x(0) - 1.0), 1.0}); },
      [](const Vector& x) -> Matrix {
        return vec({12.0 * x(0) * x(0) - 4.0, 0.0}).asDiagonal();
      },
      [](const Vector& x, const Vector& u, const Vector& v, const Vector& w) {
        return 24.0 * x(0) * u(0) * v(0) * w(0);
      });
  return finish({"counterexample", std::move(obj), vec({0.0, 0.0}), {}, {},
                 "(x^2 - 1)^2 + y - 1, unbounded below; non-elliptic at the origin",
                 box(2, -2), box(2, 2)});
}

Problem strongly_convex_base() {
  Objective obj(
      2,
      [](const Vector& y) {
        return 0.5 * y.squaredNorm() + (std::pow(y(0), 4) + std::pow(y(1), 4)) / 12.0;
      },
      [](const Vector& y) -> Vector { return y + y.cwiseProduct(y).cwiseProduct(y) / 3.0; },
      [](const Vector& y) -> Matrix {
        return (Vector::Ones(2) + y.cwiseProduct(y)).asDiagonal();
      },
      [](const Vector& y, const Vector& u, const Vector& v, const Vector& w) {
        return 2.0 * (y(0) * u(0) * v(0) * w(0) + y(1) * u(1) * v(1) * w(1));
      });
  return finish({"strongly_convex_base", std::move(obj), vec({1.0, 0.5}), vec({0.0, 0.0}), 0.0,
                 "1/2 |y|^2 + (y1^4 + y2^4)/12", box(2, -2), box(2, 2)});
}

const std::map<std::string, std::function<Problem()>>& registry() {
  static const std::map<std::string, std::function<Problem()>> table = {
      {"quad_well",
       [] {
         return make_quadratic("quad_well", vec({2.0, 8.0}).asDiagonal(), vec({0.1, 0.2}),
                               vec({1.0, 1.0}));
       }},
      {"quad_51",
       [] {
         return make_quadratic("quad_51", vec({1.0, 4.0}).asDiagonal(), vec({-1.0, -4.0}),
                               vec({2.0, 0.0}));
       }},
      {"quad_52",
       [] {
         return make_quadratic("quad_52", vec({1.0, 4.0, 9.0}).asDiagonal(),
                               vec({-1.0, 0.0, 0.0}), vec({2.0, 0.0, 0.0}));
       }},
      {"convex_53", convex_53},
      {"poly6", poly6},
      {"inverse_barrier", inverse_barrier},
      {"rosenbrock", rosenbrock},
      {"ring_tilted", ring_tilted},
      {"saddle_poly", saddle_poly},
      {"four_well", four_well},
      {"counterexample", counterexample},
      {"strongly_convex_base", strongly_convex_base},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "quad_well",   "quad_51",     "quad_52",   "convex_53",      "poly6",
      "inverse_barrier", "rosenbrock", "ring_tilted", "saddle_poly", "four_well",
      "counterexample",  "strongly_convex_base"};
  return names;
}

Problem catalog(const std::string& name) {
  constexpr std::string_view scaled_prefix = "affine_scaled:";
  if (name.starts_with(scaled_prefix)) {
    const std::string tail = name.substr(scaled_prefix.size());
    std::size_t used = 0;
    double gamma = 0.0;
    try {
      gamma = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tail.size() || !(gamma > 0.0)) {
      throw Error(Errc::UnknownProblem, "bad scaling in '" + name + "'");
    }
    return make_affine_scaled(gamma).first;
  }
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) throw Error(Errc::UnknownProblem, "no problem named '" + name + "'");
  return it->second();
}

Problem make_quadratic(std::string name, const Matrix& a, const Vector& b, const Vector& x0) {
  const SymmetricClass cls = classify_symmetric(a);
  if (cls.tag != SymmetricTag::PositiveDefinite) {
    throw Error(Errc::InvalidArgument, "quadratic needs a positive definite matrix");
  }
  const int dim = static_cast<int>(a.rows());
  const Vector x_star = -solve_spd(cls, b);
  Objective obj(
      dim, [a, b](const Vector& x) { return 0.5 * x.dot(a * x) + b.dot(x); },
      [a, b](const Vector& x) -> Vector { return a * x + b; },
      [a](const Vector&) { return a; }, zero_third);
  Problem p{std::move(name), std::move(obj), x0, x_star, 0.5 * b.dot(x_star),
            "quadratic", box(dim, -2), box(dim, 2)};
  return finish(std::move(p));
}

std::pair<Problem, AffineScalingSpec> make_affine_scaled(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(Errc::InvalidArgument, "gamma must be positive");
  }
  AffineScalingSpec spec{gamma, vec({1.0, gamma}).asDiagonal()};
  Problem p = make_quadratic("affine_scaled", vec({1.0, gamma * gamma}).asDiagonal(),
                             Vector::Zero(2), vec({1.0, 1.0}));
  std::ostringstream label;
  label.precision(17);
  label << "affine_scaled:" << gamma;
  p.name = label.str();
  p.notes = "1/2 (x1^2 + gamma^2 x2^2)";
  return {std::move(p), std::move(spec)};
}

std::pair<Vector, double> inverse_barrier_optimum() {
  // Real root of s (1 - s)^2 + 2 = 0, i.e. x1 + x2 at the minimizer.
  const double k = std::cbrt(3.0 * std::sqrt(87.0) + 28.0);
  const double s = 2.0 / 3.0 - (k + 1.0 / k) / 3.0;
  return {Vector::Constant(2, 0.5 * s), 0.25 * s * s + 1.0 / (1.0 - s)};
}

std::vector<Vector> sample_points(const Problem& problem, int count, std::mt19937_64& rng) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index dim = problem.sample_lo.size();
  while (static_cast<int>(out.size()) < count) {
    Vector x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      x(i) = problem.sample_lo(i) + unit(rng) * (problem.sample_hi(i) - problem.sample_lo(i));
    }
    if (problem.objective.in_domain(x)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace yand
