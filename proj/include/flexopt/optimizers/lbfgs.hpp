#pragma once

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>
#include <vector>

#include "flexopt/callbacks/callbacks.hpp"
#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/type_requirements.hpp"
#include "flexopt/function/full_function.hpp"

namespace flexopt {

/**
 * Limited-memory BFGS with a strong Wolfe line search.
 *
 * The search direction is produced by the standard two-loop recursion over
 * the most recent (s, y) pairs, with initial Hessian scaling
 * gamma = s'y / y'y.  The line search enforces sufficient decrease
 * (c1 = 1e-4) and the strong curvature condition (c2 = 0.9), starting from a
 * unit trial step and interpolating cubically, with at most 50 trial steps.
 *
 * A line search that can make no further progress ends the run with
 * termination Converged and the line_search_failed flag set in the report.
 */
class Lbfgs
{
 public:
  explicit Lbfgs(std::size_t memory = 10,
                 std::size_t maxIterations = 100,
                 double gradientTolerance = 1e-6)
      : memory_(memory), maxIterations_(maxIterations),
        gradientTolerance_(gradientTolerance) {}

  std::size_t& memory() { return memory_; }
  std::size_t& max_iterations() { return maxIterations_; }
  double& gradient_tolerance() { return gradientTolerance_; }

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
    report.termination = Termination::MaxIterations;

    bool stopped = false;
    if (callbacks::begin_optimization(*this, full, x, cbs...) ==
        CallbackDecision::Terminate)
    {
      report.termination = Termination::CallbackRequested;
      report.final_objective = std::numeric_limits<E>::quiet_NaN();
      stopped = true;
    }

    MatType g(x.rows(), x.cols());
    E objective = E(0);
    if (!stopped)
    {
      objective = full.evaluate_with_gradient(x, g);
      report.final_objective = objective;
      if (callbacks::evaluate(*this, full, x, double(objective), cbs...) ==
              CallbackDecision::Terminate ||
          callbacks::gradient(*this, full, x, g, cbs...) ==
              CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        stopped = true;
      }
      else if (!std::isfinite(double(objective)) || !all_finite(g))
      {
        report.termination = Termination::NumericalFailure;
        stopped = true;
      }
    }

    std::deque<std::pair<MatType, MatType>> pairs;  // (s, y)
    while (!stopped && report.iterations < maxIterations_)
    {
      if (inf_norm(g) < E(gradientTolerance_))
      {
        report.termination = Termination::Converged;
        break;
      }

      MatType direction = two_loop_direction(g, pairs);
      if (dot(g, direction) >= E(0))
      {
        // Not a descent direction; drop the memory and fall back to steepest
        // descent.
        pairs.clear();
        direction = -g;
      }

      MatType xNew = x;
      MatType gNew(x.rows(), x.cols());
      E objectiveNew = objective;
      const LineSearchOutcome outcome = wolfe_line_search(
          full, x, direction, objective, g, xNew, gNew, objectiveNew, cbs...);
      if (outcome == LineSearchOutcome::CallbackStop)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
      if (outcome == LineSearchOutcome::NumericalFailure)
      {
        report.termination = Termination::NumericalFailure;
        break;
      }
      if (outcome == LineSearchOutcome::NoProgress)
      {
        report.termination = Termination::Converged;
        report.line_search_failed = true;
        break;
      }

      MatType s = xNew - x;
      MatType y = gNew - g;
      if (dot(s, y) > E(1e-14))
      {
        pairs.emplace_back(std::move(s), std::move(y));
        if (pairs.size() > memory_)
          pairs.pop_front();
      }

      x = xNew;
      g = gNew;
      objective = objectiveNew;
      report.final_objective = objective;
      ++report.iterations;
      if (callbacks::step_taken(*this, full, x, cbs...) ==
          CallbackDecision::Terminate)
      {
        report.termination = Termination::CallbackRequested;
        break;
      }
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
  enum class LineSearchOutcome
  {
    Accepted,
    NoProgress,
    NumericalFailure,
    CallbackStop
  };

  template<typename MatType>
  static MatType two_loop_direction(
      const MatType& g,
      const std::deque<std::pair<MatType, MatType>>& pairs)
  {
    using E = typename MatType::elem_type;
    MatType q = g;
    std::vector<E> alpha(pairs.size());
    std::vector<E> rho(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;)
    {
      const auto& [s, y] = pairs[k];
      rho[k] = E(1) / dot(y, s);
      alpha[k] = rho[k] * dot(s, q);
      q -= alpha[k] * y;
    }
    if (!pairs.empty())
    {
      const auto& [s, y] = pairs.back();
      const E gamma = dot(s, y) / dot(y, y);
      q *= gamma;
    }
    for (std::size_t k = 0; k < pairs.size(); ++k)
    {
      const auto& [s, y] = pairs[k];
      const E beta = rho[k] * dot(y, q);
      q += (alpha[k] - beta) * s;
    }
    return -q;
  }

  // Strong Wolfe line search (bracket + zoom with cubic interpolation).
  template<typename Full, typename MatType, typename... Cbs>
  LineSearchOutcome wolfe_line_search(
      Full& full, const MatType& x, const MatType& direction,
      typename MatType::elem_type phi0, const MatType& g0,
      MatType& xOut, MatType& gOut, typename MatType::elem_type& phiOut,
      Cbs&&... cbs)
  {
    using E = typename MatType::elem_type;
    const E c1 = E(1e-4);
    const E c2 = E(0.9);
    const std::size_t maxTrials = 50;

    MatType gTrial(x.rows(), x.cols());

    // phi(a) = f(x + a * d); dphi(a) = grad f(x + a d) . d
    std::size_t trials = 0;
    bool callbackStop = false;
    bool numericalFailure = false;
    const auto probe = [&](E a, E& phi, E& dphi) -> bool {
      if (trials >= maxTrials)
        return false;
      ++trials;
      xOut = x + a * direction;
      phi = full.evaluate_with_gradient(xOut, gTrial);
      if (callbacks::evaluate(*this, full, xOut, double(phi), cbs...) ==
              CallbackDecision::Terminate ||
          callbacks::gradient(*this, full, xOut, gTrial, cbs...) ==
              CallbackDecision::Terminate)
      {
        callbackStop = true;
        return false;
      }
      if (!all_finite(gTrial))
      {
        numericalFailure = true;
        return false;
      }
      dphi = dot(gTrial, direction);
      return true;
    };

    // The caller guarantees a descent direction, so dphiAt0 < 0.
    const E dphiAt0 = dot(g0, direction);

    const auto accepted = [&](E a, E phi) {
      phiOut = phi;
      xOut = x + a * direction;
      gOut = gTrial;
      return LineSearchOutcome::Accepted;
    };

    const auto zoom = [&](E lo, E philo, E dphilo, E hi, E phihi) {
      E phi = philo, dphi = dphilo;
      for (; trials < maxTrials;)
      {
        // Cubic-flavored interpolation safeguarded toward the midpoint.
        E a = interpolate(lo, philo, dphilo, hi, phihi);
        const E lower = std::min(lo, hi);
        const E upper = std::max(lo, hi);
        const E span = upper - lower;
        if (!(a > lower + E(0.1) * span) || !(a < upper - E(0.1) * span))
          a = (lo + hi) / E(2);
        if (!probe(a, phi, dphi))
          return LineSearchOutcome::NoProgress;
        if (!std::isfinite(double(phi)) ||
            phi > phi0 + c1 * a * dphiAt0 || phi >= philo)
        {
          hi = a;
          phihi = phi;
        }
        else
        {
          if (std::abs(dphi) <= -c2 * dphiAt0)
            return accepted(a, phi);
          if (dphi * (hi - lo) >= E(0))
          {
            hi = lo;
            phihi = philo;
          }
          lo = a;
          philo = phi;
          dphilo = dphi;
        }
        if (std::abs(hi - lo) < E(1e-18))
          return LineSearchOutcome::NoProgress;
      }
      return LineSearchOutcome::NoProgress;
    };

    E alphaPrev = E(0);
    E phiPrev = phi0;
    E dphiPrev = dphiAt0;
    E alpha = E(1);
    LineSearchOutcome outcome = LineSearchOutcome::NoProgress;
    for (std::size_t i = 0; trials < maxTrials; ++i)
    {
      E phi, dphi;
      if (!probe(alpha, phi, dphi))
        break;
      if (!std::isfinite(double(phi)) ||
          phi > phi0 + c1 * alpha * dphiAt0 || (i > 0 && phi >= phiPrev))
      {
        outcome = zoom(alphaPrev, phiPrev, dphiPrev, alpha, phi);
        break;
      }
      if (std::abs(dphi) <= -c2 * dphiAt0)
      {
        outcome = accepted(alpha, phi);
        break;
      }
      if (dphi >= E(0))
      {
        outcome = zoom(alpha, phi, dphi, alphaPrev, phiPrev);
        break;
      }
      alphaPrev = alpha;
      phiPrev = phi;
      dphiPrev = dphi;
      alpha *= E(2);
      if (alpha > E(1e10))
        break;
    }

    if (callbackStop)
      return LineSearchOutcome::CallbackStop;
    if (numericalFailure)
      return LineSearchOutcome::NumericalFailure;
    return outcome;
  }

  // Minimizer of the cubic through (lo, philo) with slope dphilo and
  // (hi, phihi); falls back to bisection when degenerate.
  template<typename E>
  static E interpolate(E lo, E philo, E dphilo, E hi, E phihi)
  {
    const E d = hi - lo;
    if (d == E(0))
      return lo;
    // Quadratic interpolation using philo, dphilo, phihi.
    const E denom = E(2) * (phihi - philo - dphilo * d);
    if (denom == E(0) || !std::isfinite(double(denom)))
      return (lo + hi) / E(2);
    const E a = lo - dphilo * d * d / denom;
    if (!std::isfinite(double(a)))
      return (lo + hi) / E(2);
    return a;
  }

  std::size_t memory_;
  std::size_t maxIterations_;
  double gradientTolerance_;
};

}  // namespace flexopt
