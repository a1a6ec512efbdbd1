#pragma once

#include <cstddef>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

/// f(x) = (1/2) sum_j (x_j^4 - 16 x_j^2 + 5 x_j); each coordinate has its
/// minimizer near -2.903534.
class StyblinskiTangFunction
{
 public:
  explicit StyblinskiTangFunction(std::size_t dimension = 2)
      : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }

  template<typename MatType>
  typename MatType::elem_type evaluate(const MatType& x) const
  {
    using E = typename MatType::elem_type;
    E sum = E(0);
    for (std::size_t j = 0; j < x.size(); ++j)
    {
      const E v = x[j];
      sum += v * v * v * v - E(16) * v * v + E(5) * v;
    }
    return sum / E(2);
  }

  template<typename MatType>
  void gradient(const MatType& x, MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    for (std::size_t j = 0; j < x.size(); ++j)
    {
      const E v = x[j];
      g[j] = (E(4) * v * v * v - E(32) * v + E(5)) / E(2);
    }
  }

  template<typename MatType = Mat>
  MatType initial_point() const
  {
    using E = typename MatType::elem_type;
    return MatType(dimension_, 1, E(-1));
  }

 private:
  std::size_t dimension_;
};

}  // namespace flexopt
