#pragma once

#include <cstddef>

namespace flexopt {

/// Central-difference gradient oracle: g_j = (f(x + h e_j) - f(x - h e_j)) / 2h.
/// `f` is anything with an evaluate(x) method; x is not mutated.
template<typename F, typename MatType>
MatType finite_difference_gradient(F& f, const MatType& x,
                                   typename MatType::elem_type h)
{
  using E = typename MatType::elem_type;
  MatType g(x.rows(), x.cols());
  MatType probe = x;
  for (std::size_t j = 0; j < x.size(); ++j)
  {
    const E original = probe[j];
    probe[j] = original + h;
    const E forward = f.evaluate(probe);
    probe[j] = original - h;
    const E backward = f.evaluate(probe);
    probe[j] = original;
    g[j] = (forward - backward) / (E(2) * h);
  }
  return g;
}

}  // namespace flexopt
