#pragma once

#include <chrono>
#include <limits>
#include <stdexcept>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/function/full_function.hpp"

namespace flexopt {

/**
 * Exhaustive search over categorical dimensions.  Combinations are visited
 * in odometer order with the last dimension varying fastest; ties are broken
 * in favor of the first combination visited.  Works with any element type,
 * including integers.
 */
class GridSearch
{
 public:
  /// Search using the allowed-value lists supplied explicitly.
  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(
      F& f, MatType& x,
      const std::vector<std::vector<typename MatType::elem_type>>& dimensions,
      Cbs&&... cbs)
  { return run(f, x, dimensions, cbs...); }

  /// Search using the function's own categorical dimension lists.
  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(F& f, MatType& x, Cbs&&... cbs)
      requires HasCategoricalInfo<F>
  {
    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::Categorical);
    if (!check)
      throw CapabilityError(check.message);
    const auto dimensions = f.categorical_dimensions();
    return run(f, x, dimensions, cbs...);
  }

 private:
  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> run(
      F& f, MatType& x,
      const std::vector<std::vector<typename MatType::elem_type>>& dimensions,
      Cbs&... cbs)
  {
    using E = typename MatType::elem_type;

    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::Arbitrary);
    if (!check)
      throw CapabilityError(check.message);

    if (dimensions.empty())
      throw std::invalid_argument("GridSearch: no dimensions given");
    for (const auto& values : dimensions)
      if (values.empty())
        throw std::invalid_argument(
            "GridSearch: every dimension needs at least one allowed value");

    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.termination = Termination::Converged;

    const std::size_t d = dimensions.size();
    x.set_size(d, 1);

    bool stopped = false;
    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
    {
      report.termination = Termination::CallbackRequested;
      stopped = true;
    }

    std::vector<std::size_t> index(d, 0);
    MatType candidate(d, 1);
    MatType best(d, 1);
    E bestObjective = E(0);
    bool haveBest = false;

    while (!stopped)
    {
      for (std::size_t j = 0; j < d; ++j)
        candidate[j] = dimensions[j][index[j]];
      const E objective = full.evaluate(candidate);
      ++report.iterations;
      if (callbacks::evaluate(*this, full, candidate, double(objective),
                              cbs...) == CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (!haveBest || objective < bestObjective)
      {
        haveBest = true;
        bestObjective = objective;
        best = candidate;
      }

      // Advance the odometer; the last dimension varies fastest.
      std::size_t j = d;
      while (j-- > 0)
      {
        if (++index[j] < dimensions[j].size())
          break;
        index[j] = 0;
        if (j == 0)
          stopped = true;
      }
      if (stopped)
        break;
    }

    if (haveBest)
    {
      x = best;
      report.final_objective = bestObjective;
    }
    report.best_coordinates = x;
    report.evaluations = full.evaluations();
    report.gradients = full.gradients();
    report.combined = full.combined();
    (void) callbacks::end_optimization(*this, full, x, cbs...);
    report.elapsed_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    return report;
  }
};

}  // namespace flexopt
