#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/seed.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"

namespace flexopt {

enum class FeatureSelection
{
  Cyclic,
  RandomPermutation
};

/**
 * Coordinate descent over a partially differentiable objective.  Each
 * iteration updates the coordinates touched by one feature's sparse partial
 * gradient; a sweep visits every feature once.  Convergence is declared when
 * the full objective improves by less than the tolerance over a sweep.
 */
class CoordinateDescent
{
 public:
  explicit CoordinateDescent(double stepSize = 0.01,
                             std::size_t maxIterations = 100000,
                             double tolerance = 1e-5,
                             FeatureSelection selection =
                                 FeatureSelection::Cyclic,
                             std::uint64_t seed = default_seed)
      : stepSize_(stepSize), maxIterations_(maxIterations),
        tolerance_(tolerance), selection_(selection), seed_(seed) {}

  double& step_size() { return stepSize_; }
  double step_size() const { return stepSize_; }
  std::size_t& max_iterations() { return maxIterations_; }
  double& tolerance() { return tolerance_; }

  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(F& f, MatType& x, Cbs&&... cbs)
  {
    using E = typename MatType::elem_type;
    require_floating_point<MatType>();

    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::PartiallyDifferentiable);
    if (!check)
      throw CapabilityError(check.message);

    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.termination = Termination::MaxIterations;

    std::mt19937_64 rng(seed_);
    // check_requirements() above throws when num_features() is missing; the
    // constexpr-false branch only keeps this template instantiable so the
    // diagnostic (not a compile error) is what surfaces.
    const std::size_t d = [&] {
      if constexpr (HasNumFeatures<F>)
        return full.num_features();
      else
        return std::size_t(0);
    }();
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t(0));

    bool stopped = false;
    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
    {
      report.termination = Termination::CallbackRequested;
      stopped = true;
    }

    E objective = E(0);
    if (!stopped)
    {
      objective = full.evaluate(x);
      report.final_objective = objective;
      if (callbacks::evaluate(*this, full, x, double(objective), cbs...) ==
          CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        stopped = true;
      }
    }

    MatType partial(x.rows(), x.cols());
    while (!stopped && report.iterations < maxIterations_)
    {
      if (selection_ == FeatureSelection::RandomPermutation)
        std::shuffle(order.begin(), order.end(), rng);

      for (std::size_t k = 0; k < d; ++k)
      {
        if (report.iterations >= maxIterations_)
          break;
        full.partial_gradient(x, order[k], partial);
        if (callbacks::gradient(*this, full, x, partial, cbs...) ==
            CallbackDecision::Terminate)
        {
          report.termination = Termination::CallbackRequested;
          stopped = true;
          break;
        }
        if (!all_finite(partial))
        {
          report.termination = Termination::NumericalFailure;
          stopped = true;
          break;
        }
        x -= E(stepSize_) * partial;
        ++report.iterations;
        if (callbacks::step_taken(*this, full, x, cbs...) ==
            CallbackDecision::Terminate)
        {
          report.termination = Termination::CallbackRequested;
          stopped = true;
          break;
        }
      }
      if (stopped)
        break;

      const E sweepObjective = full.evaluate(x);
      report.final_objective = sweepObjective;
      if (callbacks::evaluate(*this, full, x, double(sweepObjective),
                              cbs...) == CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (std::abs(double(objective) - double(sweepObjective)) < tolerance_)
      {
        objective = sweepObjective;
        report.termination = Termination::Converged;
        break;
      }
      objective = sweepObjective;
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

 private:
  double stepSize_;
  std::size_t maxIterations_;
  double tolerance_;
  FeatureSelection selection_;
  std::uint64_t seed_;
};

}  // namespace flexopt
