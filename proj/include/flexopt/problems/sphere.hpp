#pragma once

#include <cstddef>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

/**
 * Sum of squared coordinates, f(x) = sum_j x_j^2, offered in every form the
 * framework understands: full evaluate/gradient, separable parts
 * (part i contributes x_i^2), and sparse partial gradients per feature.
 * The evaluate works with any element type, including integers.
 */
class SphereFunction
{
 public:
  explicit SphereFunction(std::size_t dimension = 2)
      : dimension_(dimension) {}

  template<typename MatType>
  typename MatType::elem_type evaluate(const MatType& x) const
  {
    using E = typename MatType::elem_type;
    E sum = E(0);
    for (std::size_t j = 0; j < x.size(); ++j)
      sum += x[j] * x[j];
    return sum;
  }

  template<typename MatType>
  void gradient(const MatType& x, MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    for (std::size_t j = 0; j < x.size(); ++j)
      g[j] = E(2) * x[j];
  }

  // Separable form: part i is x_i^2.
  std::size_t num_functions() const { return dimension_; }

  template<typename MatType>
  typename MatType::elem_type evaluate(const MatType& x, std::size_t first,
                                       std::size_t batch) const
  {
    using E = typename MatType::elem_type;
    E sum = E(0);
    for (std::size_t i = first; i < first + batch; ++i)
      sum += x[i] * x[i];
    return sum;
  }

  template<typename MatType>
  void gradient(const MatType& x, std::size_t first, MatType& g,
                std::size_t batch) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    for (std::size_t i = first; i < first + batch; ++i)
      g[i] = E(2) * x[i];
  }

  // Partially differentiable form: feature j only touches coordinate j.
  std::size_t num_features() const { return dimension_; }

  template<typename MatType>
  void partial_gradient(const MatType& x, std::size_t j, MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    g[j] = E(2) * x[j];
  }

  template<typename MatType = Mat>
  MatType initial_point() const
  {
    using E = typename MatType::elem_type;
    return MatType(dimension_, 1, E(1));
  }

 private:
  std::size_t dimension_;
};

}  // namespace flexopt
