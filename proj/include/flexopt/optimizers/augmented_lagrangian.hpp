#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"
#include "flexopt/optimizers/lbfgs.hpp"

namespace flexopt {

namespace detail {

// Unconstrained augmented Lagrangian objective
//   L(x) = f(x) + sum_i lambda_i c_i(x) + (sigma / 2) sum_i c_i(x)^2
// built over a FullFunction.  Constraint calls are surfaced through the
// optional hook so the outer optimizer can fire constraint callbacks.
template<typename Full, typename MatType, typename ConstraintHook>
class AugmentedLagrangianObjective
{
 public:
  using E = typename MatType::elem_type;

  AugmentedLagrangianObjective(Full& full, const std::vector<double>& lambda,
                               const double& sigma, ConstraintHook& hook)
      : full_(full), lambda_(lambda), sigma_(sigma), hook_(hook) {}

  E evaluate_with_gradient(const MatType& x, MatType& g)
  {
    E objective = full_.evaluate_with_gradient(x, g);
    MatType constraintGradient(x.rows(), x.cols());
    const std::size_t m = full_.num_constraints();
    for (std::size_t i = 0; i < m; ++i)
    {
      const double c = double(full_.evaluate_constraint(i, x));
      full_.gradient_constraint(i, x, constraintGradient);
      hook_(i, x, c, constraintGradient);
      objective += E(lambda_[i] * c + 0.5 * sigma_ * c * c);
      g += E(lambda_[i] + sigma_ * c) * constraintGradient;
    }
    return objective;
  }

 private:
  Full& full_;
  const std::vector<double>& lambda_;
  const double& sigma_;
  ConstraintHook& hook_;
};

}  // namespace detail

/**
 * Augmented Lagrangian method for equality-constrained differentiable
 * objectives.  Each outer iteration minimizes the augmented Lagrangian with
 * L-BFGS, then updates the multipliers (lambda_i += sigma * c_i(x)) and
 * increases the penalty tenfold whenever the maximum constraint violation
 * has not shrunk to a quarter of its previous value.
 */
class AugmentedLagrangian
{
 public:
  explicit AugmentedLagrangian(Lbfgs inner = Lbfgs(),
                               std::size_t maxOuterIterations = 50,
                               double constraintTolerance = 1e-7,
                               double initialPenalty = 10.0)
      : inner_(inner), maxOuterIterations_(maxOuterIterations),
        constraintTolerance_(constraintTolerance),
        initialPenalty_(initialPenalty) {}

  Lbfgs& inner() { return inner_; }
  std::size_t& max_outer_iterations() { return maxOuterIterations_; }
  double& constraint_tolerance() { return constraintTolerance_; }

  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(F& f, MatType& x, Cbs&&... cbs)
  {
    using E = typename MatType::elem_type;
    require_floating_point<MatType>();

    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::Constrained);
    if (!check)
      throw CapabilityError(check.message);

    // The throw above already covers unconstrained objectives; the constexpr
    // guard only keeps this template instantiable for them so the diagnostic
    // (not a compile error) is what surfaces.
    if constexpr (!HasConstraints<F, MatType>)
    {
      return {};
    }
    else
    {
    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.termination = Termination::MaxIterations;

    const std::size_t m = full.num_constraints();
    std::vector<double> lambda(m, 0.0);
    double sigma = initialPenalty_;

    bool stopRequested = false;
    auto hook = [&](std::size_t i, const MatType& at, double value,
                    const MatType& constraintGradient) {
      if (callbacks::evaluate_constraint(*this, full, at, i, value, cbs...) ==
              CallbackDecision::Terminate ||
          callbacks::gradient_constraint(*this, full, at, i,
                                         constraintGradient, cbs...) ==
              CallbackDecision::Terminate)
        stopRequested = true;
    };
    using Hook = decltype(hook);
    detail::AugmentedLagrangianObjective<decltype(full), MatType, Hook>
        lagrangian(full, lambda, sigma, hook);

    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
      stopRequested = true;

    double previousViolation = std::numeric_limits<double>::infinity();
    for (std::size_t outer = 0;
         outer < maxOuterIterations_ && !stopRequested; ++outer)
    {
      Lbfgs innerRun = inner_;
      const OptimizationReport<MatType> innerReport =
          innerRun.optimize(lagrangian, x, cbs...);
      report.iterations += innerReport.iterations;
      report.final_objective = full.evaluate(x);
      if (innerReport.termination == Termination::CallbackRequested)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (innerReport.termination == Termination::NumericalFailure)
      {
        report.termination = Termination::NumericalFailure;
        break;
      }

      double maxViolation = 0.0;
      std::vector<double> values(m);
      for (std::size_t i = 0; i < m; ++i)
      {
        values[i] = double(full.evaluate_constraint(i, x));
        maxViolation = std::max(maxViolation, std::abs(values[i]));
      }
      if (stopRequested)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }

      if (maxViolation < constraintTolerance_ &&
          innerReport.termination == Termination::Converged &&
          !innerReport.line_search_failed)
      {
        report.termination = Termination::Converged;
        break;
      }

      for (std::size_t i = 0; i < m; ++i)
        lambda[i] += sigma * values[i];
      if (maxViolation > 0.25 * previousViolation)
        sigma *= 10.0;
      previousViolation = maxViolation;
    }

    if (stopRequested && report.termination == Termination::MaxIterations)
      report.termination = Termination::CallbackRequested;

    report.best_coordinates = x;
    report.evaluations = full.evaluations();
    report.gradients = full.gradients();
    report.combined = full.combined();
    (void) callbacks::end_optimization(*this, full, x, cbs...);
    report.elapsed_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    return report;
    }
  }

 private:
  Lbfgs inner_;
  std::size_t maxOuterIterations_;
  double constraintTolerance_;
  double initialPenalty_;
};

}  // namespace flexopt
