#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/seed.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"
#include "flexopt/optimizers/sgd_policies.hpp"

namespace flexopt {

/**
 * Stochastic gradient descent over a differentiable separable objective,
 * parameterized by an update policy (vanilla, momentum, Adam, ...).
 *
 * One iteration is one batch update; an epoch is one full pass over all
 * parts.  Part visitation order is reshuffled per epoch when `shuffle` is
 * set, driven by the run seed.  The batch gradient is the mean of the
 * per-part gradients.  Convergence is declared when the full objective
 * changes by less than `tolerance` between consecutive epochs.
 */
template<typename UpdatePolicy = VanillaUpdate>
class Sgd
{
 public:
  explicit Sgd(double stepSize = 0.01,
               std::size_t batchSize = 32,
               std::size_t maxIterations = 100000,
               double tolerance = 1e-5,
               bool shuffle = true,
               UpdatePolicy updatePolicy = UpdatePolicy(),
               std::uint64_t seed = default_seed)
      : stepSize_(stepSize), batchSize_(batchSize),
        maxIterations_(maxIterations), tolerance_(tolerance),
        shuffle_(shuffle), updatePolicy_(updatePolicy), seed_(seed) {}

  double& step_size() { return stepSize_; }
  double step_size() const { return stepSize_; }
  std::size_t& batch_size() { return batchSize_; }
  std::size_t& max_iterations() { return maxIterations_; }
  double& tolerance() { return tolerance_; }
  bool& shuffle() { return shuffle_; }
  std::uint64_t& seed() { return seed_; }
  UpdatePolicy& update_policy() { return updatePolicy_; }

  /// Optional hard cap on epochs (0 = limited only by max_iterations).
  std::size_t& max_epochs() { return maxEpochs_; }
  std::size_t max_epochs() const { return maxEpochs_; }

  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(F& f, MatType& x, Cbs&&... cbs)
  {
    using E = typename MatType::elem_type;
    require_floating_point<MatType>();

    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::DifferentiableSeparable);
    if (!check)
      throw CapabilityError(check.message);

    // check_requirements() above throws for non-separable objectives, so the
    // constexpr-false branch is never taken; it only keeps this template
    // instantiable so the diagnostic (not a compile error) is what surfaces.
    const std::size_t n = [&] {
      if constexpr (HasNumFunctions<F>)
        return full.num_functions();
      else
        return std::size_t(0);
    }();
    if (n == 0)
      throw std::invalid_argument("Sgd: the objective has zero parts");
    if (batchSize_ == 0)
      throw std::invalid_argument("Sgd: batch size must be at least 1");

    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.termination = Termination::MaxIterations;

    std::mt19937_64 rng(seed_);
    typename UpdatePolicy::template Policy<MatType> policy(
        updatePolicy_, x.rows(), x.cols());

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

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));

    MatType batchGradient(x.rows(), x.cols());
    MatType partGradient(x.rows(), x.cols());
    bool epochComplete = true;
    while (!stopped && report.iterations < maxIterations_ &&
           (maxEpochs_ == 0 || report.epochs < maxEpochs_))
    {
      const std::size_t epoch = report.epochs + 1;
      if (callbacks::begin_epoch(*this, full, x, epoch, double(objective),
                                 cbs...) == CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (shuffle_)
        std::shuffle(order.begin(), order.end(), rng);

      epochComplete = true;
      for (std::size_t first = 0; first < n; first += batchSize_)
      {
        if (report.iterations >= maxIterations_)
        {
          epochComplete = false;
          break;
        }
        const std::size_t batch = std::min(batchSize_, n - first);

        MatType gradPoint = x;
        if constexpr (requires { policy.gradient_coordinates(x, stepSize_); })
          gradPoint = policy.gradient_coordinates(x, stepSize_);

        batchGradient.fill(E(0));
        for (std::size_t k = 0; k < batch; ++k)
        {
          full.gradient(gradPoint, order[first + k], partGradient, 1);
          batchGradient += partGradient;
        }
        batchGradient *= E(1) / E(batch);

        if (callbacks::gradient(*this, full, x, batchGradient, cbs...) ==
            CallbackDecision::Terminate)
        {
          report.termination = Termination::CallbackRequested;
          stopped = true;
          break;
        }
        if (!all_finite(batchGradient))
        {
          report.termination = Termination::NumericalFailure;
          stopped = true;
          break;
        }

        policy.update(x, stepSize_, batchGradient);
        ++report.iterations;
        if (callbacks::step_taken(*this, full, x, cbs...) ==
            CallbackDecision::Terminate)
        {
          report.termination = Termination::CallbackRequested;
          stopped = true;
          break;
        }
      }
      if (stopped || !epochComplete)
        break;

      const E epochObjective = full.evaluate(x);
      report.final_objective = epochObjective;
      ++report.epochs;
      if (callbacks::evaluate(*this, full, x, double(epochObjective),
                              cbs...) == CallbackDecision::Terminate ||
          callbacks::end_epoch(*this, full, x, epoch, double(epochObjective),
                               cbs...) == CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        stopped = true;
        break;
      }
      if (!std::isfinite(double(epochObjective)))
      {
        report.termination = Termination::NumericalFailure;
        stopped = true;
        break;
      }
      if (std::abs(double(epochObjective) - double(objective)) < tolerance_)
      {
        objective = epochObjective;
        report.termination = Termination::Converged;
        stopped = true;
        break;
      }
      objective = epochObjective;
    }

    if (!epochComplete && !stopped)
    {
      // Budget ran out mid-epoch; refresh the reported objective.
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
  std::size_t batchSize_;
  std::size_t maxIterations_;
  double tolerance_;
  bool shuffle_;
  UpdatePolicy updatePolicy_;
  std::uint64_t seed_;
  std::size_t maxEpochs_ = 0;
};

using StandardSgd = Sgd<VanillaUpdate>;
using MomentumSgd = Sgd<MomentumUpdate>;
using NesterovMomentumSgd = Sgd<NesterovMomentumUpdate>;
using Adam = Sgd<AdamUpdate>;
using AdaMax = Sgd<AdaMaxUpdate>;
using AdaGrad = Sgd<AdaGradUpdate>;
using AdaDelta = Sgd<AdaDeltaUpdate>;
using RmsProp = Sgd<RmsPropUpdate>;
using Smorms3 = Sgd<Smorms3Update>;

}  // namespace flexopt
