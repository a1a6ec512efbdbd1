#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/seed.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"

namespace flexopt {

/// Geometric cooling: T_{k+1} = (1 - lambda) * T_k.
struct ExponentialSchedule
{
  explicit ExponentialSchedule(double lambdaIn = 0.001) : lambda(lambdaIn) {}

  double lambda;

  double next_temperature(double t) const { return (1.0 - lambda) * t; }
};

/// Metropolis acceptance rule: always accept an improvement; accept a
/// worsening of `delta` at temperature `t` with probability exp(-delta / t).
template<typename Rng>
bool metropolis_accept(double delta, double t, Rng& rng)
{
  if (delta <= 0.0)
    return true;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return uniform(rng) < std::exp(-delta / t);
}

/**
 * Simulated annealing for arbitrary (gradient-free) objectives over
 * floating-point coordinates.
 *
 * Each proposal perturbs a single coordinate (visited cyclically) by a
 * uniform draw from [-scale_j, scale_j].  Every `moves_per_sweep` visits per
 * coordinate the per-coordinate scales are adapted toward a 0.44 acceptance
 * rate (widened above 0.6, narrowed below 0.4).  Cooling starts after
 * `init_moves` burn-in proposals.  Exactly one objective evaluation is
 * performed per iteration, and the report carries the best coordinates ever
 * seen.  A tolerance of 0 disables early stopping; otherwise the run stops
 * once the best objective has improved by less than the tolerance for three
 * consecutive sweeps.
 */
template<typename Schedule = ExponentialSchedule>
class SimulatedAnnealing
{
 public:
  explicit SimulatedAnnealing(Schedule schedule = Schedule(),
                              std::size_t maxIterations = 100000,
                              double initialTemperature = 10000.0,
                              std::size_t initMoves = 1000,
                              std::size_t movesPerSweep = 100,
                              double tolerance = 0.0,
                              std::uint64_t seed = default_seed)
      : schedule_(schedule), maxIterations_(maxIterations),
        initialTemperature_(initialTemperature), initMoves_(initMoves),
        movesPerSweep_(movesPerSweep), tolerance_(tolerance), seed_(seed) {}

  std::size_t& max_iterations() { return maxIterations_; }
  double& initial_temperature() { return initialTemperature_; }
  double& tolerance() { return tolerance_; }
  std::uint64_t& seed() { return seed_; }

  template<typename F, typename MatType, typename... Cbs>
  OptimizationReport<MatType> optimize(F& f, MatType& x, Cbs&&... cbs)
  {
    using E = typename MatType::elem_type;
    require_floating_point<MatType>();
    if (initialTemperature_ <= 0.0)
      throw std::invalid_argument(
          "SimulatedAnnealing: initial temperature must be positive");

    FullFunction<F, MatType> full(f);
    const RequirementCheck check = check_requirements(
        full.capabilities, FunctionClass::Arbitrary);
    if (!check)
      throw CapabilityError(check.message);

    const auto start = std::chrono::steady_clock::now();
    OptimizationReport<MatType> report;
    report.termination = Termination::MaxIterations;

    std::mt19937_64 rng(seed_);

    bool stopped = false;
    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
    {
      report.termination = Termination::CallbackRequested;
      stopped = true;
    }

    E objective = E(0);
    MatType best = x;
    double bestObjective = std::numeric_limits<double>::infinity();
    if (!stopped && maxIterations_ > 0)
    {
      // The initial evaluation is iteration 1, so a run performs exactly
      // max_iterations objective evaluations.
      objective = full.evaluate(x);
      ++report.iterations;
      bestObjective = double(objective);
      if (callbacks::evaluate(*this, full, x, double(objective), cbs...) ==
          CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        stopped = true;
      }
      else if (!std::isfinite(double(objective)))
      {
        report.termination = Termination::NumericalFailure;
        stopped = true;
      }
    }

    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<double> scale(x.size(), 1.0);
    std::vector<std::size_t> attempts(x.size(), 0);
    std::vector<std::size_t> accepted(x.size(), 0);
    MatType proposal = x;
    double temperature = initialTemperature_;
    std::size_t coordinate = 0;
    std::size_t sweepProposals = 0;
    const std::size_t proposalsPerAdaptation =
        std::max<std::size_t>(1, movesPerSweep_) * std::max<std::size_t>(1, x.size());
    double bestAtSweepStart = bestObjective;
    std::size_t stalledSweeps = 0;

    while (!stopped && report.iterations < maxIterations_)
    {
      const std::size_t j = coordinate;
      coordinate = (coordinate + 1) % x.size();
      proposal = x;
      proposal[j] = x[j] + E(scale[j] * uniform(rng));
      ++attempts[j];
      const E proposalObjective = full.evaluate(proposal);
      ++report.iterations;
      ++sweepProposals;
      if (callbacks::evaluate(*this, full, proposal,
                              double(proposalObjective), cbs...) ==
          CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (!std::isfinite(double(proposalObjective)))
      {
        report.termination = Termination::NumericalFailure;
        break;
      }

      const double delta = double(proposalObjective) - double(objective);
      if (metropolis_accept(delta, temperature, rng))
      {
        x = proposal;
        objective = proposalObjective;
        ++accepted[j];
        if (double(objective) < bestObjective)
        {
          bestObjective = double(objective);
          best = x;
        }
        if (callbacks::step_taken(*this, full, x, cbs...) ==
            CallbackDecision::Terminate)
        {
          report.termination = Termination::CallbackRequested;
          break;
        }
      }

      // Cooling starts once the burn-in proposals are spent.
      if (report.iterations > initMoves_)
        temperature = schedule_.next_temperature(temperature);

      if (sweepProposals >= proposalsPerAdaptation)
      {
        // Corana-style step adaptation: widen a coordinate's reach when it
        // accepts too often, narrow it when it accepts too rarely, aiming at
        // a 0.44 acceptance rate.
        for (std::size_t k = 0; k < scale.size(); ++k)
        {
          if (attempts[k] == 0)
            continue;
          const double rate = double(accepted[k]) / double(attempts[k]);
          if (rate > 0.6)
            scale[k] *= 1.0 + 2.0 * (rate - 0.6) / 0.4;
          else if (rate < 0.4)
            scale[k] /= 1.0 + 2.0 * (0.4 - rate) / 0.4;
          attempts[k] = 0;
          accepted[k] = 0;
        }
        sweepProposals = 0;

        // Once the system is cold, re-anchor the walk at the best point seen
        // so exploration done in the hot phase is not wasted.
        if (temperature < 1e-3 && double(objective) > bestObjective)
        {
          x = best;
          objective = E(bestObjective);
        }

        if (tolerance_ > 0.0)
        {
          if (bestAtSweepStart - bestObjective < tolerance_)
          {
            if (++stalledSweeps >= 3)
            {
              report.termination = Termination::Converged;
              break;
            }
          }
          else
          {
            stalledSweeps = 0;
          }
          bestAtSweepStart = bestObjective;
        }
      }
    }

    x = best;
    report.best_coordinates = best;
    report.final_objective = E(bestObjective);
    report.evaluations = full.evaluations();
    report.gradients = full.gradients();
    report.combined = full.combined();
    (void) callbacks::end_optimization(*this, full, x, cbs...);
    report.elapsed_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    return report;
  }

 private:
  Schedule schedule_;
  std::size_t maxIterations_;
  double initialTemperature_;
  std::size_t initMoves_;
  std::size_t movesPerSweep_;
  double tolerance_;
  std::uint64_t seed_;
};

}  // namespace flexopt
