#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "flexopt/optimizers/lbfgs.hpp"
#include "flexopt/problems/rosenbrock.hpp"
#include "flexopt/problems/sphere.hpp"
#include "flexopt/problems/styblinski_tang.hpp"

using namespace flexopt;

namespace {

struct StepObjectiveRecorder
{
  std::vector<double> values;
  template<typename Opt, typename Fn, typename MatType>
  void step_taken(Opt&, Fn& f, MatType& x)
  { values.push_back(double(f.evaluate(x))); }
};

}  // namespace

TEST_CASE("with empty memory the direction is steepest descent")
{
  // On the first iteration the two-loop recursion has no curvature pairs, so
  // a single step must move along -gradient.  The sphere gradient at (1, 2)
  // is (2, 4); after one iteration the iterate stays on the ray
  // x0 - a * (2, 4).
  SphereFunction sphere(2);
  Lbfgs lbfgs(10, 1, 0.0);
  Mat x{1.0, 2.0};
  (void) lbfgs.optimize(sphere, x);
  const double a0 = (1.0 - x[0]) / 2.0;
  const double a1 = (2.0 - x[1]) / 4.0;
  CHECK_THAT(a0, Catch::Matchers::WithinAbs(a1, 1e-14));
  CHECK(a0 > 0.0);
}

TEST_CASE("sphere converges to machine precision in a few iterations")
{
  SphereFunction sphere(10);
  Lbfgs lbfgs(10, 10, 1e-10);
  Mat x(10, 1, 1.0);
  const auto report = lbfgs.optimize(sphere, x);
  CHECK(report.termination == Termination::Converged);
  CHECK(double(report.final_objective) <= 1e-10);
}

TEST_CASE("rosenbrock from the classic start reaches the optimum")
{
  RosenbrockFunction rosenbrock;
  Lbfgs lbfgs(10, 100, 1e-10);
  Mat x = rosenbrock.initial_point();
  const auto report = lbfgs.optimize(rosenbrock, x);
  CHECK(double(report.final_objective) < 1e-8);
  CHECK(report.iterations <= 100);
  CHECK_THAT(x[0], Catch::Matchers::WithinAbs(1.0, 1e-4));
  CHECK_THAT(x[1], Catch::Matchers::WithinAbs(1.0, 1e-4));
}

TEST_CASE("accepted steps satisfy sufficient decrease")
{
  // Record the objective after every accepted step; each accepted point must
  // not increase the objective (the Wolfe search enforces the Armijo
  // condition with c1 = 1e-4, which in particular forbids increases).
  StyblinskiTangFunction f(4);
  Lbfgs lbfgs(5, 50, 1e-9);
  Mat x = f.initial_point();
  StepObjectiveRecorder recorder;
  (void) lbfgs.optimize(f, x, recorder);
  REQUIRE(recorder.values.size() >= 2);
  for (std::size_t i = 1; i < recorder.values.size(); ++i)
    CHECK(recorder.values[i] <= recorder.values[i - 1] + 1e-12);
}

TEST_CASE("combined-only objectives work unchanged")
{
  struct CombinedSphere
  {
    double evaluate_with_gradient(const Mat& x, Mat& g) const
    {
      g.set_size(x.rows(), x.cols());
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        sum += x[i] * x[i];
        g[i] = 2.0 * x[i];
      }
      return sum;
    }
  };
  CombinedSphere f;
  Lbfgs lbfgs(10, 10, 1e-10);
  Mat x{3.0, -4.0};
  const auto report = lbfgs.optimize(f, x);
  CHECK(report.termination == Termination::Converged);
  CHECK(report.combined > 0);
  CHECK(report.evaluations == 0);
}

TEST_CASE("evaluate-only objective is rejected with a diagnostic")
{
  struct EvaluateOnly
  {
    double evaluate(const Mat& x) const { return x[0] * x[0]; }
  };
  EvaluateOnly f;
  Lbfgs lbfgs;
  Mat x{1.0};
  CHECK_THROWS_WITH(lbfgs.optimize(f, x),
                    Catch::Matchers::ContainsSubstring("gradient()") &&
                    Catch::Matchers::ContainsSubstring("differentiable"));
}
