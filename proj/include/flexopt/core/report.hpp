#pragma once

#include <cstddef>
#include <string>

namespace flexopt {

enum class Termination
{
  Converged,
  MaxIterations,
  CallbackRequested,
  NumericalFailure
};

inline const char* to_string(Termination t)
{
  switch (t)
  {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max-iterations";
    case Termination::CallbackRequested: return "callback-requested";
    case Termination::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

/// Outcome of a single optimize() call.
template<typename MatType>
struct OptimizationReport
{
  using elem_type = typename MatType::elem_type;

  MatType best_coordinates;
  elem_type final_objective = elem_type(0);
  std::size_t iterations = 0;
  std::size_t epochs = 0;  // separable optimizers only
  std::size_t evaluations = 0;
  std::size_t gradients = 0;
  std::size_t combined = 0;
  Termination termination = Termination::Converged;
  // Set when an L-BFGS line search could make no further progress; the run
  // still reports Converged.
  bool line_search_failed = false;
  double elapsed_seconds = 0.0;
};

}  // namespace flexopt
