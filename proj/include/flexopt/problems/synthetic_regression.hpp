#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "flexopt/core/matrix.hpp"
#include "flexopt/core/seed.hpp"

namespace flexopt {

struct SyntheticRegressionData
{
  Mat X;       // n x d design matrix, standard normal entries
  Mat y;       // n x 1 responses
  Mat theta;   // d x 1 unit-norm ground-truth coefficients
};

/**
 * Generate a noisy linear regression instance: X has i.i.d. standard normal
 * entries, theta is a seeded unit-norm direction, and
 * y = X theta + noise * standard normal.  Deterministic per seed.
 */
inline SyntheticRegressionData synthetic_regression(
    std::size_t n, std::size_t d, double noise,
    std::uint64_t seed = default_seed)
{
  if (n < 1 || d < 1)
    throw std::invalid_argument("synthetic_regression: n and d must be >= 1");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  SyntheticRegressionData data;
  data.X.set_size(n, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i)
      data.X(i, j) = normal(rng);

  data.theta.set_size(d, 1);
  for (std::size_t j = 0; j < d; ++j)
    data.theta[j] = normal(rng);
  const double length = norm(data.theta);
  if (length > 0.0)
    data.theta *= 1.0 / length;

  data.y = matmul(data.X, data.theta);
  for (std::size_t i = 0; i < n; ++i)
    data.y[i] += noise * normal(rng);

  return data;
}

}  // namespace flexopt
