#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "yand/direction.hpp"
#include "yand/invariance.hpp"
#include "yand/optimizer.hpp"
#include "yand/problems.hpp"
#include "yand/slice_centroid.hpp"

using namespace yand;
using namespace yand::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Notes {
  Outcome out;
  std::ostringstream os;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!out.pass) os << "; ";
      out.pass = false;
      os << what;
    }
  }
  Outcome finish(const std::string& summary) {
    out.detail = out.pass ? summary : os.str();
    return out;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const std::vector<std::pair<std::string, StepRule>>& line_searches() {
  static const std::vector<std::pair<std::string, StepRule>> rules = {
      {"exact", ExactSpec{}}, {"wolfe", StrongWolfeSpec{}}, {"armijo", ArmijoSpec{}}};
  return rules;
}

Objective random_quadratic(const Matrix& a, const Vector& b) {
  return Objective(
      static_cast<int>(a.rows()),
      [a, b](const Vector& x) { return 0.5 * x.dot(a * x) + b.dot(x); },
      [a, b](const Vector& x) -> Vector { return a * x + b; }, [a](const Vector&) { return a; },
      [](const Vector&, const Vector&, const Vector&, const Vector&) { return 0.0; });
}

bool monotone(const RunReport& r) {
  for (std::size_t k = 1; k < r.records.size(); ++k) {
    if (!(r.records[k].f < r.records[k - 1].f)) return false;
  }
  return true;
}

Outcome quadratic_one_step() {
  Notes n;
  double worst = 0.0;
  for (const char* name : {"quad_well", "quad_51"}) {
    const Problem p = catalog(name);
    const RunReport r = yand_run(p, ExactSpec{});
    const double err = (r.final().x - *p.x_star).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    n.require(r.status == RunStatus::Converged && r.iters == 1,
              std::string(name) + " took " + std::to_string(r.iters) + " steps");
    n.require(err <= 1e-8, std::string(name) + " error " + fmt(err));
  }
  return n.finish("iters=1, max |x1-x*|_inf=" + fmt(worst));
}

Outcome newton_collinearity() {
  Notes n;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index dim = uniform_int(rng, 2, 6);
    const Matrix a = random_spd(rng, dim);
    const Vector b = random_normal(rng, dim);
    const Objective f = random_quadratic(a, b);
    const Vector x = random_normal(rng, dim) * 2.0;
    const Vector oracle = -gauss_solve(a, a * x + b);
    worst = std::max(worst, angle(descent_direction(f, x).d, oracle));
  }
  n.require(worst <= 1e-8, "max angle " + fmt(worst));
  return n.finish("max angle " + fmt(worst) + " rad over 50 quadratics");
}

Outcome worked_examples() {
  Notes n;
  const Problem q51 = catalog("quad_51");
  const Vector p51 = q51.x0;
  const Frame f51 = build_normal_aligned_frame(q51.objective.gradient(p51));
  const double s51 = f51.q.col(0).dot(Vector(vec({4.0, 1.0}))) > 0 ? 1.0 : -1.0;
  const double tau51 = s51 * affine_normal_direction(q51.objective, p51).tau(0);
  n.require(std::abs(tau51 + 0.6) <= 1e-12, "tau 5.1 = " + fmt(tau51));

  const Problem q52 = catalog("quad_52");
  const Vector d52 = descent_direction(q52.objective, q52.x0).d;
  n.require((d52 - vec({-1.0, 0.0, 0.0})).cwiseAbs().maxCoeff() <= 1e-12, "d 5.2 mismatch");

  const Problem c53 = catalog("convex_53");
  const Vector p53 = c53.x0;
  const Frame f53 = build_normal_aligned_frame(c53.objective.gradient(p53));
  const double s53 = f53.q.col(0).dot(Vector(vec({-3.0, 1.0}))) > 0 ? 1.0 : -1.0;
  const double tau53 = s53 * affine_normal_direction(c53.objective, p53).tau(0);
  const Vector d53 = descent_direction(c53.objective, p53).d;
  const double slope = c53.objective.gradient(p53).dot(d53);
  n.require(std::abs(tau53 - 0.7687) <= 1e-3, "tau 5.3 = " + fmt(tau53));
  n.require(std::abs(d53(0) + 1.0454) <= 1e-3 && std::abs(d53(1) + 0.7056) <= 1e-3,
            "d 5.3 = (" + fmt(d53(0)) + "," + fmt(d53(1)) + ")");
  n.require(std::abs(slope + 4.2164) <= 1e-3, "slope 5.3 = " + fmt(slope));
  return n.finish("tau=" + fmt(tau51) + ", d52 exact, tau=" + fmt(tau53) + ", slope=" + fmt(slope));
}

Outcome table2() {
  Notes n;
  std::ostringstream row;
  for (double gamma : {1.0, 10.0, 1e2, 1e3, 1e4}) {
    const Problem p = make_affine_scaled(gamma).first;
    const RunReport ye = yand_run(p, ExactSpec{});
    const RunReport yw = yand_run(p, StrongWolfeSpec{});
    const RunReport ya = yand_run(p, ArmijoSpec{});
    const RunReport ge = gradient_descent_run(p, ExactSpec{});
    const RunReport gf = gradient_descent_run(p, FixedStep{1.0 / (gamma * gamma)});
    const RunReport nt = newton_run(p, false);
    const std::string g = "gamma=" + fmt(gamma);
    n.require(ye.status == RunStatus::Converged && ye.iters == 1, g + " yand_exact");
    n.require(nt.status == RunStatus::Converged && nt.iters == 1, g + " newton");
    if (gamma == 1.0) {
      n.require(gf.status == RunStatus::Converged && gf.iters == 1, g + " gd_fixed");
    } else {
      n.require(gf.status == RunStatus::MaxIterReached && gf.iters == 200, g + " gd_fixed");
    }
    n.require(ge.status == RunStatus::Converged && ge.iters <= 10, g + " gd_exact");
    n.require(yw.status == RunStatus::Converged && yw.iters <= 20, g + " yand_wolfe");
    n.require(ya.status == RunStatus::Converged && ya.iters <= 20, g + " yand_armijo");
    row << ' ' << ye.iters << '/' << yw.iters << '/' << ya.iters << '/' << ge.iters << '/'
        << (gf.status == RunStatus::MaxIterReached ? "200*" : std::to_string(gf.iters)) << '/'
        << nt.iters;
  }
  return n.finish("counts" + row.str());
}

Outcome inverse_barrier() {
  Notes n;
  const Problem p = catalog("inverse_barrier");
  const auto [x_star, f_star] = inverse_barrier_optimum();
  for (const auto& [name, rule] : line_searches()) {
    const RunReport r = yand_run(p, rule);
    n.require(r.status == RunStatus::Converged, name + " status");
    const double err = (r.final().x - x_star).norm();
    n.require(err <= 1e-5, name + " |x-x*|=" + fmt(err));
    n.require(std::abs(r.final().f - 0.7107265761) <= 1e-8, name + " f");
    for (const auto& rec : r.records) n.require(rec.x.sum() < 1.0, name + " infeasible iterate");
  }
  return n.finish("all three searches converge feasibly");
}

Outcome rosenbrock() {
  Notes n;
  const Problem p = catalog("rosenbrock");
  std::string counts;
  for (const auto& [name, rule] : line_searches()) {
    const RunReport r = yand_run(p, rule);
    n.require(r.status == RunStatus::Converged && r.final().grad_norm <= 1e-4, name);
    counts += " " + name + "=" + std::to_string(r.iters);
  }
  return n.finish("iters" + counts);
}

Outcome nonconvex() {
  Notes n;
  const struct {
    const char* name;
    Vector x0;
  } cases[] = {{"ring_tilted", vec({0.0, 1.5})},
               {"saddle_poly", vec({0.1, 0.2})},
               {"four_well", vec({0.1, -1.5})}};
  for (const auto& c : cases) {
    const Problem p = catalog(c.name);
    for (const auto& [ls, rule] : line_searches()) {
      const RunReport r = run_method(p.objective, c.x0, Method::YAND, rule);
      const std::string tag = std::string(c.name) + "/" + ls;
      n.require(r.status == RunStatus::Converged && r.final().grad_norm <= 1e-4, tag + " status");
      n.require(monotone(r), tag + " not monotone");
    }
  }
  const Problem fw = catalog("four_well");
  double drift = 0.0;
  for (const auto& [ls, rule] : line_searches()) {
    const RunReport r = run_method(fw.objective, vec({0.0, -1.5}), Method::YAND, rule);
    for (const auto& rec : r.records) drift = std::max(drift, std::abs(rec.x(0)));
    const Vector xf = r.final().x;
    const double to_trap = std::min((xf - vec({0.0, 1.0})).norm(), (xf - vec({0.0, -1.0})).norm());
    n.require(r.status == RunStatus::Converged, "trap/" + ls + " status");
    n.require(to_trap <= 1e-5, "trap/" + ls + " distance " + fmt(to_trap));
  }
  n.require(drift <= 1e-12, "trap drift " + fmt(drift));
  return n.finish("all converge monotonically; trap drift " + fmt(drift));
}

Outcome slice_centroid_equivalence() {
  Notes n;
  const Problem p = catalog("quad_51");
  const Vector z = vec({2.0, 0.0});
  const Vector an = descent_direction(p.objective, z).d;
  const auto error_at = [&](double delta) {
    SliceParams params;
    params.delta = delta;
    return line_angle(slice_centroid_direction(p.objective, z, params), an);
  };
  const double at_1e3 = error_at(1e-3);
  n.require(at_1e3 <= 1e-2, "angle at 1e-3 = " + fmt(at_1e3));
  const double e1 = error_at(1e-2), e2 = error_at(5e-3), e3 = error_at(2.5e-3);
  const double r1 = e2 / e1, r2 = e3 / e2;
  const bool ratios_ok = r1 >= 0.25 && r1 <= 0.75 && r2 >= 0.25 && r2 <= 0.75;
  n.require(ratios_ok, "halving ratios " + fmt(r1) + ", " + fmt(r2) + " (errors " + fmt(e1) +
                           ", " + fmt(e2) + ", " + fmt(e3) + ")");
  return n.finish("angle " + fmt(at_1e3) + ", ratios " + fmt(r1) + ", " + fmt(r2));
}

Outcome counterexample() {
  Notes n;
  const Problem p = catalog("counterexample");
  SliceParams params;
  params.delta = 1e-2;
  const Vector z = vec({0.0, 0.0});
  const Vector d = slice_centroid_direction(p.objective, z, params);
  const double ang = line_angle(d, vec({0.0, 1.0}));
  const double slope = p.objective.gradient(z).dot(d);
  n.require(ang <= 1e-6, "angle to (0,1) " + fmt(ang));
  n.require(slope > 0.0, "slope " + fmt(slope));
  return n.finish("angle " + fmt(ang) + ", <grad f, d> = " + fmt(slope));
}

Outcome angle_identity() {
  Notes n;
  double worst = 0.0;
  int count = 0;
  for (const auto& name : catalog_names()) {
    const Problem p = catalog(name);
    for (const auto& [ls, rule] : line_searches()) {
      const RunReport r = yand_run(p, rule);
      for (std::size_t k = 1; k < r.records.size(); ++k) {
        const auto& rec = r.records[k];
        const double v =
            rec.cos_theta * std::sqrt(1.0 + rec.tangential_norm * rec.tangential_norm);
        worst = std::max(worst, std::abs(v - 1.0));
        ++count;
      }
    }
  }
  n.require(worst <= 1e-10, "max deviation " + fmt(worst));
  return n.finish(std::to_string(count) + " iterates, max deviation " + fmt(worst));
}

Outcome line_search_contracts() {
  Notes n;
  int armijo = 0, wolfe = 0, steps = 0;
  for (const auto& name : catalog_names()) {
    const Problem p = catalog(name);
    for (Method m : {Method::YAND, Method::GradientDescent, Method::Newton, Method::DampedNewton}) {
      std::vector<StepRule> rules = {ExactSpec{}, StrongWolfeSpec{}, ArmijoSpec{}};
      if (m == Method::Newton) rules.push_back(FixedStep{1.0});
      for (const StepRule& rule : rules) {
        const RunReport r = run_method(p.objective, p.x0, m, rule);
        for (std::size_t k = 1; k < r.records.size(); ++k) {
          const auto& prev = r.records[k - 1];
          const auto& rec = r.records[k];
          const std::string tag = name + "/" + std::string(to_string(m));
          ++steps;
          n.require(rec.f < prev.f, tag + " f not decreasing");
          if (const auto* a = std::get_if<ArmijoSpec>(&rule)) {
            ++armijo;
            n.require(armijo_holds(prev.f, rec.slope, rec.alpha, rec.f, a->sigma), tag + " Armijo");
          }
          if (const auto* w = std::get_if<StrongWolfeSpec>(&rule)) {
            ++wolfe;
            const double dphi = p.objective.gradient(rec.x).dot(rec.direction);
            n.require(strong_wolfe_holds(prev.f, rec.slope, rec.alpha, rec.f, dphi, w->c1, w->c2),
                      tag + " strong Wolfe");
          }
        }
      }
    }
  }
  return n.finish(std::to_string(armijo) + " Armijo, " + std::to_string(wolfe) + " Wolfe, " +
                  std::to_string(steps) + " steps checked");
}

Outcome affine_scaling() {
  Notes n;
  const Problem base = catalog("strongly_convex_base");
  std::string detail;
  for (double gamma : {10.0, 1e2, 1e4}) {
    Matrix b = Matrix::Identity(2, 2);
    b(1, 1) = gamma;
    const InvarianceReport r = run_invariance(base, b, ExactSpec{});
    const double dev = r.max_deviation_first(11);
    n.require(dev <= 1e-6, "gamma=" + fmt(gamma) + " deviation " + fmt(dev));
    n.require(r.iters_scaled == r.iters_base, "gamma=" + fmt(gamma) + " iteration counts " +
                                                  std::to_string(r.iters_scaled) + " vs " +
                                                  std::to_string(r.iters_base));
    detail += " " + fmt(dev);
  }
  return n.finish("deviations" + detail);
}

Outcome derivative_oracle() {
  Notes n;
  std::mt19937_64 rng(42);
  double g = 0, h = 0, t = 0;
  for (const auto& name : catalog_names()) {
    const Problem p = catalog(name);
    const DerivativeReport r = verify_derivatives(p.objective, sample_points(p, 5, rng));
    g = std::max(g, r.max_rel_err_grad);
    h = std::max(h, r.max_rel_err_hess);
    t = std::max(t, r.max_rel_err_third);
    n.require(within(r), name);
  }
  return n.finish("max errors " + fmt(g) + ", " + fmt(h) + ", " + fmt(t));
}

Outcome quadratic_rate() {
  Notes n;
  std::string detail;
  for (const char* name : {"quad_well", "poly6"}) {
    const Problem p = catalog(name);
    const RunReport r = yand_run(p, ArmijoSpec{});
    const RateTable t = empirical_rates(r, p.x_star, p.f_star);
    const std::size_t m = std::min<std::size_t>(2, t.quadratic.size());
    n.require(r.status == RunStatus::Converged, std::string(name) + " status");
    std::string ratios, alphas;
    for (std::size_t i = t.quadratic.size() - m; i < t.quadratic.size(); ++i) {
      const double q = t.quadratic[i];
      ratios += " " + fmt(q);
      n.require(std::isfinite(q) && q <= 1e3, std::string(name) + " ratio " + fmt(q));
    }
    for (std::size_t k = r.records.size() - m; k < r.records.size(); ++k) {
      alphas += " " + fmt(r.records[k].alpha);
      n.require(r.records[k].alpha == 1.0,
                std::string(name) + " alpha_" + std::to_string(k) + "=" + fmt(r.records[k].alpha));
    }
    detail += std::string(" ") + name + ":" + ratios + " |" + alphas;
  }
  return n.finish("last ratios / alphas" + detail);
}

Outcome frame_invariance() {
  Notes n;
  std::mt19937_64 rng(15);
  const std::vector<std::string> names = catalog_names();
  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    const std::string& name =
        names[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(names.size()) - 1))];
    const Problem p = catalog(name);
    const Vector x = sample_points(p, 1, rng).front();
    const Vector g = p.objective.gradient(x);
    if (g.norm() < 1e-8) continue;
    const Frame f = build_normal_aligned_frame(g);
    const Frame r = rotate_tangent_basis(f, random_orthogonal(rng, f.tangent_dim()));
    const Vector a = descent_direction(p.objective, x, f).d;
    const Vector b = descent_direction(p.objective, x, r).d;
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    ++checked;
  }
  n.require(worst <= 1e-9, "max change " + fmt(worst));
  return n.finish("200 points, max change " + fmt(worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"quadratic one-step convergence", quadratic_one_step},
      {"Newton collinearity", newton_collinearity},
      {"worked examples", worked_examples},
      {"affine-scaling iteration table", table2},
      {"inverse barrier", inverse_barrier},
      {"Rosenbrock", rosenbrock},
      {"nonconvex catalog", nonconvex},
      {"slice-centroid equivalence", slice_centroid_equivalence},
      {"slice-centroid counterexample", counterexample},
      {"angle identity", angle_identity},
      {"line-search contracts", line_search_contracts},
      {"affine-scaling equivalence", affine_scaling},
      {"derivative oracle", derivative_oracle},
      {"local quadratic rate", quadratic_rate},
      {"frame invariance", frame_invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %-32s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
