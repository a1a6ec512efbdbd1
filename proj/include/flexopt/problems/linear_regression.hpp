#pragma once

#include <cstddef>
#include <stdexcept>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

namespace detail {

inline void check_regression_shapes(const Mat& X, const Mat& y)
{
  if (y.rows() != X.rows() || y.cols() != 1)
    throw std::invalid_argument(
        "linear regression: X must be n x d and y must be n x 1");
}

}  // namespace detail

/**
 * Least-squares objective f(theta) = (X theta - y)' (X theta - y) with the
 * objective and gradient supplied as separate methods, plus the separable
 * per-sample form.  Every computation of the residual X theta - y bumps
 * residual_computations(), which makes the cost of the separate-methods
 * call pattern observable.
 */
class LinearRegressionFunction
{
 public:
  LinearRegressionFunction(const Mat& X, const Mat& y)
      : X_(X), y_(y), Xt_(transpose(X))
  { detail::check_regression_shapes(X, y); }

  double evaluate(const Mat& theta) const
  {
    const Mat r = residual(theta);
    return dot(r, r);
  }

  void gradient(const Mat& theta, Mat& g) const
  {
    const Mat r = residual(theta);
    g = 2.0 * matmul(Xt_, r);
  }

  // Separable form: part i is (x_i' theta - y_i)^2.
  std::size_t num_functions() const { return X_.rows(); }

  double evaluate(const Mat& theta, std::size_t first,
                  std::size_t batch) const
  {
    double sum = 0.0;
    for (std::size_t i = first; i < first + batch; ++i)
    {
      const double r = row_residual(theta, i);
      sum += r * r;
    }
    return sum;
  }

  void gradient(const Mat& theta, std::size_t first, Mat& g,
                std::size_t batch) const
  {
    g.set_size(theta.rows(), theta.cols());
    for (std::size_t i = first; i < first + batch; ++i)
    {
      const double r = row_residual(theta, i);
      for (std::size_t j = 0; j < theta.rows(); ++j)
        g[j] += 2.0 * r * X_(i, j);
    }
  }

  std::size_t residual_computations() const { return residualComputations_; }
  void reset_residual_computations() { residualComputations_ = 0; }

  const Mat& data() const { return X_; }
  const Mat& responses() const { return y_; }

 private:
  Mat residual(const Mat& theta) const
  {
    ++residualComputations_;
    return matmul(X_, theta) - y_;
  }

  double row_residual(const Mat& theta, std::size_t i) const
  {
    double r = -y_[i];
    for (std::size_t j = 0; j < theta.rows(); ++j)
      r += X_(i, j) * theta[j];
    return r;
  }

  Mat X_;
  Mat y_;
  Mat Xt_;
  mutable std::size_t residualComputations_ = 0;
};

/**
 * The same least-squares objective exposed only through a combined
 * evaluate_with_gradient(), so the residual is computed once and shared
 * between the objective and gradient.
 */
class LinearRegressionCombinedFunction
{
 public:
  LinearRegressionCombinedFunction(const Mat& X, const Mat& y)
      : X_(X), y_(y), Xt_(transpose(X))
  { detail::check_regression_shapes(X, y); }

  double evaluate_with_gradient(const Mat& theta, Mat& g) const
  {
    ++residualComputations_;
    const Mat r = matmul(X_, theta) - y_;
    g = 2.0 * matmul(Xt_, r);
    return dot(r, r);
  }

  std::size_t residual_computations() const { return residualComputations_; }
  void reset_residual_computations() { residualComputations_ = 0; }

 private:
  Mat X_;
  Mat y_;
  Mat Xt_;
  mutable std::size_t residualComputations_ = 0;
};

}  // namespace flexopt
