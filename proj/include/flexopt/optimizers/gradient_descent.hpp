#pragma once

#include <chrono>
#include <cmath>
#include <limits>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"

namespace flexopt {

/**
 * Plain gradient descent with a fixed step size: x <- x - step * grad f(x).
 * Stops when the max-norm of the gradient drops below the tolerance, the
 * iteration budget is exhausted, or a callback requests termination.
 */
class GradientDescent
{
 public:
  explicit GradientDescent(double stepSize = 0.01,
                           std::size_t maxIterations = 100000,
                           double tolerance = 1e-5)
      : stepSize_(stepSize), maxIterations_(maxIterations),
        tolerance_(tolerance) {}

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
        full.capabilities, FunctionClass::Differentiable);
    if (!check)
      throw CapabilityError(check.message);

    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.final_objective = std::numeric_limits<E>::quiet_NaN();
    report.termination = Termination::MaxIterations;

    bool stopped = false;
    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
    {
      report.termination = Termination::CallbackRequested;
      stopped = true;
    }

    MatType g(x.rows(), x.cols());
    E objective = std::numeric_limits<E>::quiet_NaN();
    while (!stopped && report.iterations < maxIterations_)
    {
      objective = full.evaluate_with_gradient(x, g);
      report.final_objective = objective;
      if (callbacks::evaluate(*this, full, x, double(objective), cbs...) ==
              CallbackDecision::Terminate ||
          callbacks::gradient(*this, full, x, g, cbs...) ==
              CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (!std::isfinite(double(objective)) || !all_finite(g))
      {
        report.termination = Termination::NumericalFailure;
        break;
      }
      if (inf_norm(g) < E(tolerance_))
      {
        report.termination = Termination::Converged;
        break;
      }

      x -= E(stepSize_) * g;
      ++report.iterations;
      if (callbacks::step_taken(*this, full, x, cbs...) ==
          CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
    }

    if (report.termination == Termination::MaxIterations && !stopped)
    {
      objective = full.evaluate(x);
      report.final_objective = objective;
      (void) callbacks::evaluate(*this, full, x, double(objective), cbs...);
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
};

}  // namespace flexopt
