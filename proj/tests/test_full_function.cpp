#include <catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "flexopt/core/matrix.hpp"
#include "flexopt/function/full_function.hpp"

using namespace flexopt;

namespace {

// Rosenbrock with separate methods.
struct Separate
{
  double evaluate(const Mat& x) const
  {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  }
  void gradient(const Mat& x, Mat& g) const
  {
    g.set_size(x.rows(), x.cols());
    const double a = x[1] - x[0] * x[0];
    g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
    g[1] = 200.0 * a;
  }
};

// The same function with only the combined method.
struct Combined
{
  double evaluate_with_gradient(const Mat& x, Mat& g) const
  {
    g.set_size(x.rows(), x.cols());
    const double a = x[1] - x[0] * x[0];
    g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
    g[1] = 200.0 * a;
    return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]);
  }
};

// Separable-only: f(x) = sum_i x_i^2 over 3 parts.
struct SeparableOnly
{
  std::size_t num_functions() const { return 3; }
  double evaluate(const Mat& x, std::size_t first, std::size_t batch) const
  {
    double sum = 0.0;
    for (std::size_t i = first; i < first + batch; ++i)
      sum += x[i] * x[i];
    return sum;
  }
  void gradient(const Mat& x, std::size_t first, Mat& g,
                std::size_t batch) const
  {
    g.set_size(x.rows(), x.cols());
    for (std::size_t i = first; i < first + batch; ++i)
      g[i] = 2.0 * x[i];
  }
};

struct EvaluateOnly
{
  double evaluate(const Mat& x) const { return x[0]; }
};

// Records the order of user-method invocations.
struct CallLogger
{
  mutable std::vector<std::string> log;

  std::size_t num_functions() const { return 3; }
  double evaluate(const Mat& x, std::size_t first, std::size_t) const
  {
    log.push_back("eval" + std::to_string(first));
    return x[first];
  }
  void gradient(const Mat& x, std::size_t first, Mat& g, std::size_t) const
  {
    log.push_back("grad" + std::to_string(first));
    g.set_size(x.rows(), x.cols());
    g[first] = 1.0;
  }
};

Mat random_point(std::mt19937_64& rng, std::size_t n)
{
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Mat x(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = u(rng);
  return x;
}

}  // namespace

TEST_CASE("synthesized combined matches evaluate+gradient bit-exactly")
{
  Separate f;
  FullFunction<Separate, Mat> full(f);
  STATIC_CHECK(!full.supplied_capabilities.has_evaluate_with_gradient);
  STATIC_CHECK(full.capabilities.has_evaluate_with_gradient);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k)
  {
    const Mat x = random_point(rng, 2);
    Mat g1(2, 1), g2(2, 1);
    const double separateObjective = f.evaluate(x);
    f.gradient(x, g1);
    const double combinedObjective = full.evaluate_with_gradient(x, g2);
    CHECK(combinedObjective == separateObjective);  // bit-exact
    CHECK(g1 == g2);
  }
}

TEST_CASE("combined-only projections match the combined call bit-exactly")
{
  Combined f;
  FullFunction<Combined, Mat> full(f);
  STATIC_CHECK(full.capabilities.has_evaluate);
  STATIC_CHECK(full.capabilities.has_gradient);

  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k)
  {
    const Mat x = random_point(rng, 2);
    Mat gref(2, 1), gproj(2, 1);
    const double reference = f.evaluate_with_gradient(x, gref);
    CHECK(full.evaluate(x) == reference);
    full.gradient(x, gproj);
    CHECK(gproj == gref);
  }
}

TEST_CASE("separable-only aggregation matches the direct sum")
{
  SeparableOnly f;
  FullFunction<SeparableOnly, Mat> full(f);
  Mat x{1.0, -2.0, 3.0};
  CHECK(full.evaluate(x) == 1.0 + 4.0 + 9.0);
  Mat g(3, 1);
  full.gradient(x, g);
  CHECK(g == Mat{2.0, -4.0, 6.0});
}

TEST_CASE("synthesized call order is evaluate first, parts ascending")
{
  CallLogger f;
  FullFunction<CallLogger, Mat> full(f);
  Mat x{1.0, 2.0, 3.0};
  Mat g(3, 1);
  (void) full.evaluate_with_gradient(x, g);
  const std::vector<std::string> expected =
      { "eval0", "eval1", "eval2", "grad0", "grad1", "grad2" };
  CHECK(f.log == expected);
}

TEST_CASE("counters count user-method invocations")
{
  SECTION("separate methods")
  {
    Separate f;
    FullFunction<Separate, Mat> full(f);
    Mat x{0.0, 0.0};
    Mat g(2, 1);
    (void) full.evaluate_with_gradient(x, g);
    CHECK(full.evaluations() == 1);
    CHECK(full.gradients() == 1);
    CHECK(full.combined() == 0);
  }
  SECTION("combined method")
  {
    Combined f;
    FullFunction<Combined, Mat> full(f);
    Mat x{0.0, 0.0};
    Mat g(2, 1);
    (void) full.evaluate_with_gradient(x, g);
    CHECK(full.evaluations() == 0);
    CHECK(full.gradients() == 0);
    CHECK(full.combined() == 1);
  }
  SECTION("separable parts are counted per part")
  {
    SeparableOnly f;
    FullFunction<SeparableOnly, Mat> full(f);
    Mat x{1.0, 1.0, 1.0};
    (void) full.evaluate(x);
    CHECK(full.evaluations() == 3);
    full.reset_counters();
    CHECK(full.evaluations() == 0);
  }
}

TEST_CASE("missing capability raises a capability error")
{
  EvaluateOnly f;
  FullFunction<EvaluateOnly, Mat> full(f);
  Mat x{1.0};
  Mat g(1, 1);
  CHECK(full.evaluate(x) == 1.0);
  CHECK_THROWS_AS(full.gradient(x, g), CapabilityError);
  CHECK_THROWS_AS(full.evaluate_with_gradient(x, g), CapabilityError);
  CHECK_THROWS_WITH(full.gradient(x, g),
                    Catch::Matchers::ContainsSubstring("gradient()"));
}

TEST_CASE("wrap_full_function helper")
{
  Separate f;
  auto full = wrap_full_function<Mat>(f);
  Mat x{1.0, 1.0};
  CHECK(full.evaluate(x) == 0.0);
}
