#pragma once

#include <cmath>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

/// Classic two-dimensional banana-valley function
///   f(x) = 100 (x2 - x1^2)^2 + (1 - x1)^2
/// with minimum 0 at (1, 1) and the traditional start (-1.2, 1).
class RosenbrockFunction
{
 public:
  template<typename MatType>
  typename MatType::elem_type evaluate(const MatType& x) const
  {
    using E = typename MatType::elem_type;
    const E a = x[1] - x[0] * x[0];
    const E b = E(1) - x[0];
    return E(100) * a * a + b * b;
  }

  template<typename MatType>
  void gradient(const MatType& x, MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    const E a = x[1] - x[0] * x[0];
    g[0] = E(-400) * x[0] * a - E(2) * (E(1) - x[0]);
    g[1] = E(200) * a;
  }

  template<typename MatType = Mat>
  MatType initial_point() const
  {
    using E = typename MatType::elem_type;
    MatType x(2, 1);
    x[0] = E(-1.2);
    x[1] = E(1.0);
    return x;
  }
};

}  // namespace flexopt
