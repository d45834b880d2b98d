#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yand/cli.hpp"
#include "yand/direction.hpp"
#include "yand/error.hpp"
#include "yand/invariance.hpp"
#include "yand/optimizer.hpp"
#include "yand/problems.hpp"
#include "yand/slice_centroid.hpp"

namespace py = pybind11;
using namespace yand;

namespace {

StepRule step_rule(const std::string& name, double sigma) {
  cli::Config config;
  config.sigma = sigma;
  return cli::parse_step_rule(name, config);
}

py::dict report_dict(const RunReport& r) {
  const auto n = static_cast<Eigen::Index>(r.records.size());
  const auto dim = n > 0 ? r.records.front().x.size() : 0;
  Matrix xs(n, dim);
  Vector f(n), gnorm(n), alpha(n), t(n), cos_theta(n);
  py::list cases;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& rec = r.records[static_cast<std::size_t>(k)];
    xs.row(k) = rec.x.transpose();
    f(k) = rec.f;
    gnorm(k) = rec.grad_norm;
    alpha(k) = rec.alpha;
    t(k) = rec.tangential_norm;
    cos_theta(k) = rec.cos_theta;
    if (rec.direction_case) {
      cases.append(std::string(to_string(*rec.direction_case)));
    } else {
      cases.append(py::none());
    }
  }
  py::dict d;
  d["status"] = std::string(to_string(r.status));
  d["iters"] = r.iters;
  d["x"] = xs;
  d["f"] = f;
  d["gnorm"] = gnorm;
  d["alpha"] = alpha;
  d["case"] = cases;
  d["T"] = t;
  d["cos_theta"] = cos_theta;
  d["max_T"] = r.max_tangential_norm;
  return d;
}

}  // namespace

PYBIND11_MODULE(_yand, m) {
  m.doc() = "Affine normal descent";

  py::register_exception<Error>(m, "YandError", PyExc_ValueError);

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("x0", &Problem::x0)
      .def_readonly("x_star", &Problem::x_star)
      .def_readonly("f_star", &Problem::f_star)
      .def_readonly("notes", &Problem::notes)
      .def_property_readonly("dim", [](const Problem& p) { return p.objective.dim(); })
      .def("value", [](const Problem& p, const Vector& x) { return p.objective.value(x); })
      .def("gradient", [](const Problem& p, const Vector& x) { return p.objective.gradient(x); })
      .def("hessian", [](const Problem& p, const Vector& x) { return p.objective.hessian(x); });

  m.def("catalog_names", &catalog_names);
  m.def("catalog", &catalog, py::arg("name"));
  m.def(
      "affine_scaled", [](double gamma) { return make_affine_scaled(gamma).first; },
      py::arg("gamma"));

  m.def(
      "descent_direction",
      [](const Problem& p, const Vector& x) {
        const DirectionResult r = descent_direction(p.objective, x);
        py::dict d;
        d["d"] = r.d;
        d["case"] = std::string(to_string(r.direction_case));
        d["tau"] = r.tau;
        d["T"] = r.tangential_norm;
        d["cos_theta"] = r.cos_theta;
        d["point_kind"] = std::string(to_string(r.point_class.kind));
        return d;
      },
      py::arg("problem"), py::arg("x"));
  m.def(
      "affine_normal",
      [](const Problem& p, const Vector& x) {
        const AffineNormal an = affine_normal_direction(p.objective, x);
        return py::make_tuple(an.tau, an.d);
      },
      py::arg("problem"), py::arg("x"));
  m.def(
      "newton_direction",
      [](const Problem& p, const Vector& x, bool regularize) {
        return newton_direction(p.objective, x, regularize);
      },
      py::arg("problem"), py::arg("x"), py::arg("regularize") = false);
  m.def(
      "slice_centroid_direction",
      [](const Problem& p, const Vector& z, double delta) {
        SliceParams params;
        params.delta = delta;
        return slice_centroid_direction(p.objective, z, params);
      },
      py::arg("problem"), py::arg("z"), py::arg("delta") = 1e-3);

  m.def(
      "run",
      [](const Problem& p, const std::string& method, const std::string& line_search,
         double tol_grad, int max_iter, double sigma) {
        const RunReport r = run_method(p.objective, p.x0, cli::parse_method(method),
                                       step_rule(line_search, sigma), {tol_grad, max_iter});
        return report_dict(r);
      },
      py::arg("problem"), py::arg("method") = "yand", py::arg("line_search") = "exact",
      py::arg("tol_grad") = 1e-4, py::arg("max_iter") = 200, py::arg("sigma") = 1e-4);

  m.def(
      "run_invariance",
      [](double gamma) {
        Matrix b = Matrix::Identity(2, 2);
        b(1, 1) = gamma;
        const InvarianceReport r = run_invariance(catalog("strongly_convex_base"), b, ExactSpec{});
        py::dict d;
        d["gamma"] = r.gamma;
        d["per_iterate_deviation"] = r.per_iterate_deviation;
        d["max_deviation"] = r.max_deviation;
        d["iters_scaled"] = r.iters_scaled;
        d["iters_base"] = r.iters_base;
        return d;
      },
      py::arg("gamma"));

  m.def(
      "verify_derivatives",
      [](const Problem& p, int count, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        const std::vector<Vector> pts = sample_points(p, count, rng);
        const DerivativeReport r = verify_derivatives(p.objective, pts, seed);
        py::dict d;
        d["grad"] = r.max_rel_err_grad;
        d["hess"] = r.max_rel_err_hess;
        d["third"] = r.max_rel_err_third;
        d["passed"] = within(r);
        return d;
      },
      py::arg("problem"), py::arg("count") = 5, py::arg("seed") = 42);
}
