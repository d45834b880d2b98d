#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "yand/error.hpp"
#include "yand/invariance.hpp"

using namespace yand;
using namespace yand::testing;

namespace {

Matrix diag2(double a, double b) { return vec({a, b}).asDiagonal(); }

}  // namespace

TEST_CASE("identity scaling gives identical trajectories") {
  const Problem base = catalog("strongly_convex_base");
  const InvarianceReport r = run_invariance(base, Matrix::Identity(2, 2), ExactSpec{});
  CHECK(r.max_deviation == 0.0);
  CHECK(r.iters_scaled == r.iters_base);
  CHECK(r.gamma == 1.0);
}

TEST_CASE("isotropic bowl converges in one step at every scaling") {
  const Problem bowl =
      make_quadratic("bowl", Matrix::Identity(2, 2), Vector::Zero(2), vec({1.0, 0.5}));
  for (double gamma : {1.0, 10.0, 1e3, 1e4}) {
    const InvarianceReport r = run_invariance(bowl, diag2(1.0, gamma), ExactSpec{});
    CHECK(r.iters_scaled == 1);
    CHECK(r.iters_base == 1);
    CHECK(r.max_deviation <= 1e-10);
  }
}

TEST_CASE("strongly convex base follows the same mapped trajectory") {
  const Problem base = catalog("strongly_convex_base");
  for (double gamma : {10.0, 1e2, 1e4}) {
    CAPTURE(gamma);
    const InvarianceReport r = run_invariance(base, diag2(1.0, gamma), ExactSpec{});
    CHECK(r.max_deviation_first(11) <= 1e-6);
    CHECK(r.iters_scaled == r.iters_base);
    CHECK(r.non_an_steps == 0);
    CHECK(r.per_iterate_deviation.size() ==
          static_cast<std::size_t>(std::min(r.iters_scaled, r.iters_base)) + 1);
  }
}

TEST_CASE("random diagonal scalings in the moderate range") {
  const Problem base = catalog("strongly_convex_base");
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix b = diag2(std::pow(10.0, uniform(rng, -2, 2)), std::pow(10.0, uniform(rng, -2, 2)));
    const InvarianceReport r = run_invariance(base, b, ExactSpec{});
    REQUIRE(r.max_deviation_first(11) <= 1e-6);
  }
}

TEST_CASE("invalid scalings are rejected") {
  const Problem base = catalog("strongly_convex_base");
  for (const Matrix& b : {diag2(1.0, -1.0), diag2(1.0, 0.0), Matrix(Matrix::Ones(2, 3))}) {
    try {
      run_invariance(base, b, ExactSpec{});
      FAIL("expected SingularB");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SingularB);
    }
  }
  CHECK_THROWS_AS(run_invariance(base, Matrix::Identity(3, 3), ExactSpec{}), Error);
}

TEST_CASE("directions transform covariantly under positive-determinant maps") {
  std::mt19937_64 rng(62);
  int checked = 0;
  for (const char* name : {"strongly_convex_base", "convex_53", "poly6", "rosenbrock"}) {
    const Problem p = catalog(name);
    while (checked < 100) {
      Matrix b = random_orthogonal(rng, 2, true) *
                 Matrix(vec({uniform(rng, 0.2, 5.0), uniform(rng, 0.2, 5.0)}).asDiagonal()) *
                 random_orthogonal(rng, 2, true);
      const Vector y = sample_points(p, 1, rng).front();
      if (p.objective.gradient(y).norm() < 1e-6) continue;
      if (classify_point(p.objective, y).kind != PointKind::Elliptic) continue;
      const Vector x = b.partialPivLu().solve(y);
      CAPTURE(name);
      REQUIRE(direction_covariance_angle(p.objective, b, x) <= 1e-8);
      ++checked;
      if (checked % 25 == 0) break;
    }
  }
  CHECK(checked == 100);
}
