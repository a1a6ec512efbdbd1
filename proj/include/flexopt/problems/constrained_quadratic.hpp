#pragma once

#include <cstddef>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

/**
 * Small equality-constrained test problem:
 *   minimize (x1 - 2)^2 + (x2 - 1)^2  subject to  x1 + x2 - 1 = 0.
 * The solution is (1, 0) with objective value 2.
 */
class ConstrainedQuadraticFunction
{
 public:
  template<typename MatType>
  typename MatType::elem_type evaluate(const MatType& x) const
  {
    using E = typename MatType::elem_type;
    const E a = x[0] - E(2);
    const E b = x[1] - E(1);
    return a * a + b * b;
  }

  template<typename MatType>
  void gradient(const MatType& x, MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    g[0] = E(2) * (x[0] - E(2));
    g[1] = E(2) * (x[1] - E(1));
  }

  std::size_t num_constraints() const { return 1; }

  template<typename MatType>
  typename MatType::elem_type evaluate_constraint(std::size_t /* i */,
                                                  const MatType& x) const
  {
    using E = typename MatType::elem_type;
    return x[0] + x[1] - E(1);
  }

  template<typename MatType>
  void gradient_constraint(std::size_t /* i */, const MatType& x,
                           MatType& g) const
  {
    using E = typename MatType::elem_type;
    g.set_size(x.rows(), x.cols());
    g[0] = E(1);
    g[1] = E(1);
  }

  template<typename MatType = Mat>
  MatType initial_point() const
  {
    using E = typename MatType::elem_type;
    return MatType(2, 1, E(0));
  }
};

}  // namespace flexopt
