#include <catch_amalgamated.hpp>

#include <cmath>

#include "flexopt/optimizers/gradient_descent.hpp"
#include "flexopt/problems/rosenbrock.hpp"
#include "flexopt/problems/sphere.hpp"

using namespace flexopt;

TEST_CASE("one step on the sphere follows the closed form")
{
  SphereFunction sphere(2);
  GradientDescent gd(0.01, 1, 0.0);
  Mat x{1.0, 1.0};
  const auto report = gd.optimize(sphere, x);
  CHECK(report.iterations == 1);
  CHECK(x[0] == 0.98);
  CHECK(x[1] == 0.98);
}

TEST_CASE("k steps on the sphere contract by 0.98 each")
{
  SphereFunction sphere(2);
  const std::size_t k = 25;
  GradientDescent gd(0.01, k, 0.0);
  Mat x{1.0, 1.0};
  (void) gd.optimize(sphere, x);
  const double expected = std::pow(0.98, double(k));
  CHECK_THAT(x[0], Catch::Matchers::WithinRel(expected, 1e-12));
  CHECK_THAT(x[1], Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("converges on the sphere with a gradient tolerance")
{
  SphereFunction sphere(2);
  GradientDescent gd(0.01, 100000, 1e-5);
  Mat x{1.0, 1.0};
  const auto report = gd.optimize(sphere, x);
  CHECK(report.termination == Termination::Converged);
  CHECK(inf_norm(x) < 1e-5);
}

TEST_CASE("fixed-step descent does not conquer the rosenbrock valley")
{
  RosenbrockFunction rosenbrock;
  GradientDescent gd(0.01, 1000, 1e-8);
  Mat x = rosenbrock.initial_point();
  const auto report = gd.optimize(rosenbrock, x);
  // With step 0.01 the iterates blow up or oscillate; they do not converge.
  CHECK(report.termination != Termination::Converged);
}

TEST_CASE("an evaluate-only objective is rejected before iterating")
{
  struct EvaluateOnly
  {
    mutable std::size_t calls = 0;
    double evaluate(const Mat& x) const
    {
      ++calls;
      return x[0];
    }
  };
  EvaluateOnly f;
  GradientDescent gd;
  Mat x{1.0};
  CHECK_THROWS_AS(gd.optimize(f, x), CapabilityError);
  CHECK(f.calls == 0);  // the diagnostic fires before any evaluation
}

TEST_CASE("integer coordinates are rejected")
{
  SphereFunction sphere(2);
  GradientDescent gd;
  IMat x{1, 1};
  CHECK_THROWS_AS(gd.optimize(sphere, x), TypeRequirementError);
}
