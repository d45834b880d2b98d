#include "yand/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "yand/error.hpp"
#include "yand/invariance.hpp"
#include "yand/slice_centroid.hpp"

namespace yand::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::InvalidArgument,
                "bad value '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

// Writes to the file at out_path when given, otherwise to `fallback`.
int with_sink(const std::optional<std::string>& out_path, std::ostream& fallback,
              std::ostream& err, const std::function<int(std::ostream&)>& body) {
  if (!out_path) return body(fallback);
  std::ofstream file(*out_path);
  if (!file) {
    err << "error: cannot open '" << *out_path << "' for writing\n";
    return kExitBadArgs;
  }
  const int code = body(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << *out_path << "'\n";
    return kExitBadArgs;
  }
  return code;
}

std::string cell(const RunReport& r) {
  switch (r.status) {
    case RunStatus::Converged: return std::to_string(r.iters);
    case RunStatus::MaxIterReached: return std::to_string(r.iters) + "*";
    default: return std::to_string(r.iters) + "!";
  }
}

struct Check {
  std::string name;
  double value;
  double reference;
  double error;
  double tolerance;
  bool pass() const { return std::isfinite(error) && error <= tolerance; }
};

Check compare(std::string name, double value, double reference, double tol) {
  return {std::move(name), value, reference, std::abs(value - reference), tol};
}

Check upper_bound(std::string name, double value, double bound) {
  return {std::move(name), value, 0.0, value, bound};
}

// Sign of the projection of our first tangent onto a reference tangent.
double tangent_sign(const Objective& obj, const Vector& x, const Vector& reference) {
  const Frame frame = build_normal_aligned_frame(obj.gradient(x));
  return frame.q.col(0).dot(reference) >= 0.0 ? 1.0 : -1.0;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

std::vector<Check> example_checks() {
  std::vector<Check> checks;

  const Problem q51 = catalog("quad_51");
  const Vector p51 = q51.x0;
  const AffineNormal an51 = affine_normal_direction(q51.objective, p51);
  const double tau51 = an51.tau(0) * tangent_sign(q51.objective, p51, vec2(4.0, 1.0));
  checks.push_back(compare("quad_51_tau", tau51, -0.6, 1e-12));
  const DirectionResult d51 = descent_direction(q51.objective, p51);
  checks.push_back(upper_bound("quad_51_direction_angle", angle_between(d51.d, vec2(-1.0, 1.0)),
                               1e-10));
  checks.push_back(upper_bound("quad_51_newton_angle",
                               angle_between(d51.d, newton_direction(q51.objective, p51, false)),
                               1e-10));
  SliceParams slice;
  slice.delta = 1e-3;
  const Vector sc51 = slice_centroid_direction(q51.objective, p51, slice);
  checks.push_back(upper_bound("quad_51_slice_line_angle", line_angle(sc51, d51.d), 1e-2));

  const Problem q52 = catalog("quad_52");
  const DirectionResult d52 = descent_direction(q52.objective, q52.x0);
  Vector e52(3);
  e52 << -1.0, 0.0, 0.0;
  checks.push_back(upper_bound("quad_52_direction_maxdiff", (d52.d - e52).cwiseAbs().maxCoeff(),
                               1e-12));
  checks.push_back(upper_bound(
      "quad_52_newton_maxdiff",
      (newton_direction(q52.objective, q52.x0, false) - e52).cwiseAbs().maxCoeff(), 1e-12));

  const Problem c53 = catalog("convex_53");
  const Vector p53 = c53.x0;
  const AffineNormal an53 = affine_normal_direction(c53.objective, p53);
  const double tau53 = an53.tau(0) * tangent_sign(c53.objective, p53, vec2(-3.0, 1.0));
  checks.push_back(compare("convex_53_tau", tau53, 0.7687, 1e-3));
  const DirectionResult d53 = descent_direction(c53.objective, p53);
  checks.push_back(compare("convex_53_d1", d53.d(0), -1.0454, 1e-3));
  checks.push_back(compare("convex_53_d2", d53.d(1), -0.7056, 1e-3));
  checks.push_back(
      compare("convex_53_slope", c53.objective.gradient(p53).dot(d53.d), -4.2164, 1e-3));

  const Problem cx = catalog("counterexample");
  SliceParams slice_cx;
  slice_cx.delta = 1e-2;
  const Vector sc = slice_centroid_direction(cx.objective, cx.x0, slice_cx);
  checks.push_back(upper_bound("counterexample_slice_line_angle", line_angle(sc, vec2(0.0, 1.0)),
                               1e-6));
  const double ascent = cx.objective.gradient(cx.x0).dot(sc);
  // Passes when the slope is strictly positive.
  checks.push_back({"counterexample_slice_slope", ascent, 0.0, ascent > 0.0 ? 0.0 : 1.0, 0.0});
  return checks;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate(const Config& c) {
  const bool ok = c.tol_grad > 0.0 && c.max_iter >= 1 && c.alpha0 > 0.0 && c.alpha_max >= c.alpha0 &&
                  c.beta > 0.0 && c.beta < 1.0 && c.c1 > 0.0 && c.c1 < c.c2 && c.c2 < 1.0 &&
                  c.sigma > 0.0 && c.sigma < 1.0 && std::isfinite(c.alpha_max) &&
                  std::isfinite(c.tol_grad);
  if (!ok) throw Error(Errc::InvalidArgument, "configuration value out of range");
}

Config parse_config(std::istream& in, Config base) {
  Config c = base;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidArgument, "line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key(trim(view.substr(0, eq)));
    const std::string_view value = trim(view.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw Error(Errc::InvalidArgument, "duplicate key '" + key + "'");
    }
    if (key == "tol_grad") c.tol_grad = parse_number<double>(value, key);
    else if (key == "max_iter") c.max_iter = parse_number<int>(value, key);
    else if (key == "alpha0") c.alpha0 = parse_number<double>(value, key);
    else if (key == "alpha_max") c.alpha_max = parse_number<double>(value, key);
    else if (key == "beta") c.beta = parse_number<double>(value, key);
    else if (key == "c1") c.c1 = parse_number<double>(value, key);
    else if (key == "c2") c.c2 = parse_number<double>(value, key);
    else if (key == "sigma") c.sigma = parse_number<double>(value, key);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(value, key);
    else throw Error(Errc::InvalidArgument, "unknown key '" + key + "'");
  }
  validate(c);
  return c;
}

Config load_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read config '" + path + "'");
  return parse_config(in, base);
}

StepRule parse_step_rule(const std::string& text, const Config& c) {
  if (text == "exact") return ExactSpec{c.alpha_max, 1e-10};
  if (text == "armijo") {
    ArmijoSpec s;
    s.sigma = c.sigma;
    s.beta = c.beta;
    s.alpha0 = c.alpha0;
    return s;
  }
  if (text == "wolfe") {
    StrongWolfeSpec s;
    s.c1 = c.c1;
    s.c2 = c.c2;
    s.alpha0 = c.alpha0;
    s.alpha_max = c.alpha_max;
    return s;
  }
  constexpr std::string_view prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    const double alpha = parse_number<double>(std::string_view(text).substr(prefix.size()),
                                              "fixed step");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw Error(Errc::InvalidArgument, "fixed step must be positive");
    }
    return FixedStep{alpha};
  }
  throw Error(Errc::InvalidArgument, "unknown line search '" + text + "'");
}

Method parse_method(const std::string& text) {
  if (text == "yand") return Method::YAND;
  if (text == "gd") return Method::GradientDescent;
  if (text == "newton") return Method::Newton;
  if (text == "dnewton") return Method::DampedNewton;
  throw Error(Errc::InvalidArgument, "unknown method '" + text + "'");
}

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return kExitOk;
    case RunStatus::MaxIterReached: return kExitMaxIter;
    case RunStatus::LineSearchFailure:
    case RunStatus::DegenerateStop: return kExitLineSearch;
  }
  return kExitLineSearch;
}

void write_trajectory_csv(const RunReport& report, std::ostream& os) {
  const auto dim = report.records.empty() ? 0 : report.records.front().x.size();
  os << "k";
  for (Eigen::Index i = 0; i < dim; ++i) os << ",x" << (i + 1);
  os << ",f,gnorm,alpha,case,T,cos_theta\n";
  for (const auto& r : report.records) {
    os << r.k;
    for (Eigen::Index i = 0; i < dim; ++i) os << ',' << format_double(r.x(i));
    os << ',' << format_double(r.f) << ',' << format_double(r.grad_norm) << ','
       << format_double(r.alpha) << ','
       << (r.direction_case ? std::string(to_string(*r.direction_case)) : std::string("-")) << ','
       << format_double(r.tangential_norm) << ',' << format_double(r.cos_theta) << '\n';
  }
}

int cmd_run(const std::string& problem, const std::string& method, const std::string& step,
            const Config& config, const std::optional<std::string>& out_path, std::ostream& out,
            std::ostream& err) {
  Problem p;
  Method m{};
  StepRule rule;
  try {
    validate(config);
    p = catalog(problem);
    m = parse_method(method);
    rule = parse_step_rule(step, config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }
  const RunReport report = run_method(p.objective, p.x0, m, rule, config.stopping());
  const int io = with_sink(out_path, out, err, [&](std::ostream& os) {
    write_trajectory_csv(report, os);
    return kExitOk;
  });
  if (io != kExitOk) return io;
  out << to_string(report.status) << ' ' << report.iters << ' ' << format_double(report.final().f)
      << ' ' << format_double(report.final().grad_norm) << '\n';
  return exit_code(report.status);
}

int cmd_table2(const Config& config, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  try {
    validate(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }
  const StoppingSpec stop = config.stopping();
  const StepRule exact = parse_step_rule("exact", config);
  const StepRule wolfe = parse_step_rule("wolfe", config);
  const StepRule armijo = parse_step_rule("armijo", config);
  return with_sink(out_path, out, err, [&](std::ostream& os) {
    os << "gamma,kappaB,kappaH,yand_exact,yand_wolfe,yand_armijo,gd_exact,gd_fixed,newton\n";
    for (const double gamma : {1.0, 10.0, 1e2, 1e3, 1e4}) {
      const Problem p = make_affine_scaled(gamma).first;
      os << format_double(gamma) << ',' << format_double(gamma) << ','
         << format_double(gamma * gamma) << ',' << cell(yand_run(p, exact, stop)) << ','
         << cell(yand_run(p, wolfe, stop)) << ',' << cell(yand_run(p, armijo, stop)) << ','
         << cell(gradient_descent_run(p, exact, stop)) << ','
         << cell(gradient_descent_run(p, FixedStep{1.0 / (gamma * gamma)}, stop)) << ','
         << cell(newton_run(p, false, FixedStep{1.0}, stop)) << '\n';
    }
    return kExitOk;
  });
}

int cmd_examples(const std::optional<std::string>& out_path, std::ostream& out,
                 std::ostream& err) {
  const std::vector<Check> checks = example_checks();
  bool all = true;
  const int io = with_sink(out_path, out, err, [&](std::ostream& os) {
    os << "check,value,reference,error,tolerance,pass\n";
    for (const auto& c : checks) {
      all = all && c.pass();
      os << c.name << ',' << format_double(c.value) << ',' << format_double(c.reference) << ','
         << format_double(c.error) << ',' << format_double(c.tolerance) << ','
         << (c.pass() ? "yes" : "no") << '\n';
    }
    return kExitOk;
  });
  if (io != kExitOk) return io;
  for (const auto& c : checks) {
    if (!c.pass()) err << "check failed: " << c.name << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_invariance(const std::vector<double>& gammas, const Config& config,
                   const std::optional<std::string>& out_path, std::ostream& out,
                   std::ostream& err) {
  try {
    validate(config);
    for (const double g : gammas) {
      if (!(g > 0.0) || !std::isfinite(g)) {
        throw Error(Errc::InvalidArgument, "gamma must be positive");
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArgs;
  }
  const Problem base = catalog("strongly_convex_base");
  const ExactSpec exact{config.alpha_max, 1e-10};
  return with_sink(out_path, out, err, [&](std::ostream& os) {
    os << "gamma,max_deviation,iters_scaled,iters_base\n";
    for (const double g : gammas) {
      Matrix b = Matrix::Identity(2, 2);
      b(1, 1) = g;
      const InvarianceReport r = run_invariance(base, b, exact, config.stopping());
      os << format_double(g) << ',' << format_double(r.max_deviation) << ',' << r.iters_scaled
         << ',' << r.iters_base << '\n';
    }
    return kExitOk;
  });
}

int cmd_verify(const std::vector<Problem>& problems, const Config& config,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(config.seed);
  bool all = true;
  const int io = with_sink(out_path, out, err, [&](std::ostream& os) {
    os << "problem,grad,hess,third,pass\n";
    for (const auto& p : problems) {
      const std::vector<Vector> pts = sample_points(p, 5, rng);
      const DerivativeReport r = verify_derivatives(p.objective, pts, config.seed);
      const bool ok = within(r);
      all = all && ok;
      os << p.name << ',' << format_double(r.max_rel_err_grad) << ','
         << format_double(r.max_rel_err_hess) << ',' << format_double(r.max_rel_err_third) << ','
         << (ok ? "yes" : "no") << '\n';
      if (!ok) err << "derivative check failed: " << p.name << '\n';
    }
    return kExitOk;
  });
  if (io != kExitOk) return io;
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Config& config, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err) {
  std::vector<Problem> problems;
  for (const auto& name : catalog_names()) problems.push_back(catalog(name));
  return cmd_verify(problems, config, out_path, out, err);
}

}  // namespace yand::cli
