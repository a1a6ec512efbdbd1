#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <type_traits>
#include <utility>

#include "flexopt/optimizers/simulated_annealing.hpp"
#include "flexopt/problems/rosenbrock.hpp"
#include "flexopt/problems/sphere.hpp"

using namespace flexopt;

namespace {

// Tracks the running minimum over every objective evaluation observed.
struct MinimumTracker
{
  double best = std::numeric_limits<double>::infinity();
  template<typename Opt, typename Fn, typename MatType>
  void evaluate(Opt&, Fn&, const MatType&, double objective)
  { best = std::min(best, objective); }
};

}  // namespace

TEST_CASE("metropolis acceptance rule")
{
  std::mt19937_64 rng(1);

  SECTION("improvements are always accepted")
  {
    for (int k = 0; k < 1000; ++k)
      CHECK(metropolis_accept(-1.0, 0.001, rng));
    CHECK(metropolis_accept(0.0, 1.0, rng));
  }

  SECTION("a unit worsening at unit temperature is accepted ~ exp(-1)")
  {
    const int trials = 200000;
    int acceptedCount = 0;
    for (int k = 0; k < trials; ++k)
      if (metropolis_accept(1.0, 1.0, rng))
        ++acceptedCount;
    const double rate = double(acceptedCount) / double(trials);
    CHECK_THAT(rate, Catch::Matchers::WithinAbs(std::exp(-1.0), 0.01));
  }
}

TEST_CASE("exponential schedule decays geometrically")
{
  ExponentialSchedule schedule(0.001);
  CHECK(schedule.next_temperature(10000.0) == 10000.0 * 0.999);
  double t = 100.0;
  for (int k = 0; k < 1000; ++k)
  {
    const double next = schedule.next_temperature(t);
    CHECK(next < t);
    CHECK(next > 0.0);
    t = next;
  }
}

TEST_CASE("evaluation count equals the iteration budget exactly")
{
  RosenbrockFunction f;
  SimulatedAnnealing<> sa(ExponentialSchedule(), 5000, 10000.0, 1000, 100,
                          0.0, 3);
  Mat x = f.initial_point();
  const auto report = sa.optimize(f, x);
  CHECK(report.evaluations == 5000);
  CHECK(report.iterations == 5000);
}

TEST_CASE("deterministic per seed")
{
  const auto run = [](std::uint64_t seed) {
    RosenbrockFunction f;
    SimulatedAnnealing<> sa(ExponentialSchedule(), 20000, 10000.0, 1000, 100,
                            0.0, seed);
    Mat x = f.initial_point();
    const auto report = sa.optimize(f, x);
    return std::pair<Mat, double>(x, double(report.final_objective));
  };
  const auto a = run(11);
  const auto b = run(11);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

TEST_CASE("the report carries the best objective ever seen")
{
  // Track every evaluation; the reported objective must equal the running
  // minimum, and the reported coordinates must reproduce it.
  SphereFunction f(2);
  SimulatedAnnealing<> sa(ExponentialSchedule(), 3000, 100.0, 100, 10, 0.0, 5);
  Mat x{2.0, -3.0};
  MinimumTracker tracker;
  const auto report = sa.optimize(f, x, tracker);
  CHECK(double(report.final_objective) == tracker.best);
  CHECK(f.evaluate(x) == double(report.final_objective));
}

TEST_CASE("positive tolerance enables early stopping")
{
  SphereFunction f(2);
  SimulatedAnnealing<> sa(ExponentialSchedule(0.01), 100000, 1.0, 10, 10,
                          1e-4, 7);
  Mat x{1.0, 1.0};
  const auto report = sa.optimize(f, x);
  CHECK(report.termination == Termination::Converged);
  CHECK(report.iterations < 100000);
}

TEST_CASE("invalid temperature is rejected")
{
  SphereFunction f(2);
  SimulatedAnnealing<> sa(ExponentialSchedule(), 100, 0.0);
  Mat x{1.0, 1.0};
  CHECK_THROWS_AS(sa.optimize(f, x), std::invalid_argument);
}

TEST_CASE("runs on float coordinates producing float results")
{
  SphereFunction f(2);
  SimulatedAnnealing<> sa(ExponentialSchedule(), 20000, 100.0, 1000, 100,
                          0.0, 9);
  FMat x(2, 1, 1.5f);
  const auto report = sa.optimize(f, x);
  STATIC_CHECK(std::is_same_v<decltype(report.final_objective), float>);
  CHECK(float(report.final_objective) < 0.1f);
}
