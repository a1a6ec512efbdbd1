#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "flexopt/core/matrix.hpp"

namespace flexopt {

// Update policies for the stochastic gradient descent family.  A policy is a
// small hyperparameter record with a nested Policy<MatType> carrying the
// per-run accumulator state.  Policy<MatType>::update(x, step, g) applies one
// parameter update; a policy may additionally supply
// gradient_coordinates(x, step) to request the gradient at a shifted point
// (Nesterov lookahead).

struct VanillaUpdate
{
  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const VanillaUpdate&, std::size_t, std::size_t) {}

    void update(MatType& x, double step, const MatType& g)
    { x -= E(step) * g; }
  };
};

struct MomentumUpdate
{
  explicit MomentumUpdate(double momentumIn = 0.5) : momentum(momentumIn) {}

  double momentum;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const MomentumUpdate& parent, std::size_t rows, std::size_t cols)
        : mu_(E(parent.momentum)), v_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      v_ *= mu_;
      v_ += g;
      x -= E(step) * v_;
    }

   private:
    E mu_;
    MatType v_;
  };
};

struct NesterovMomentumUpdate
{
  explicit NesterovMomentumUpdate(double momentumIn = 0.9)
      : momentum(momentumIn) {}

  double momentum;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const NesterovMomentumUpdate& parent, std::size_t rows,
           std::size_t cols)
        : mu_(E(parent.momentum)), v_(rows, cols) {}

    // Lookahead: the gradient is taken at x - step * mu * v.
    MatType gradient_coordinates(const MatType& x, double step) const
    { return x - (E(step) * mu_) * v_; }

    void update(MatType& x, double step, const MatType& g)
    {
      v_ *= mu_;
      v_ += g;
      x -= E(step) * v_;
    }

   private:
    E mu_;
    MatType v_;
  };
};

struct AdamUpdate
{
  explicit AdamUpdate(double beta1In = 0.9, double beta2In = 0.999,
                      double epsilonIn = 1e-8)
      : beta1(beta1In), beta2(beta2In), epsilon(epsilonIn) {}

  double beta1;
  double beta2;
  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const AdamUpdate& parent, std::size_t rows, std::size_t cols)
        : b1_(E(parent.beta1)), b2_(E(parent.beta2)), eps_(E(parent.epsilon)),
          m_(rows, cols), v_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      ++t_;
      m_ *= b1_;
      m_ += (E(1) - b1_) * g;
      v_ *= b2_;
      v_ += (E(1) - b2_) * square(g);
      const E mScale = E(1) / (E(1) - std::pow(b1_, E(t_)));
      const E vScale = E(1) / (E(1) - std::pow(b2_, E(t_)));
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= E(step) * (m_[i] * mScale) /
            (std::sqrt(v_[i] * vScale) + eps_);
    }

   private:
    E b1_, b2_, eps_;
    MatType m_, v_;
    std::size_t t_ = 0;
  };
};

struct AdaMaxUpdate
{
  explicit AdaMaxUpdate(double beta1In = 0.9, double beta2In = 0.999,
                        double epsilonIn = 1e-8)
      : beta1(beta1In), beta2(beta2In), epsilon(epsilonIn) {}

  double beta1;
  double beta2;
  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const AdaMaxUpdate& parent, std::size_t rows, std::size_t cols)
        : b1_(E(parent.beta1)), b2_(E(parent.beta2)), eps_(E(parent.epsilon)),
          m_(rows, cols), u_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      ++t_;
      m_ *= b1_;
      m_ += (E(1) - b1_) * g;
      const E scale = E(step) / (E(1) - std::pow(b1_, E(t_)));
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        u_[i] = std::max(b2_ * u_[i], std::abs(g[i]));
        x[i] -= scale * m_[i] / std::max(u_[i], eps_);
      }
    }

   private:
    E b1_, b2_, eps_;
    MatType m_, u_;
    std::size_t t_ = 0;
  };
};

struct AdaGradUpdate
{
  explicit AdaGradUpdate(double epsilonIn = 1e-8) : epsilon(epsilonIn) {}

  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const AdaGradUpdate& parent, std::size_t rows, std::size_t cols)
        : eps_(E(parent.epsilon)), sumSquares_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      sumSquares_ += square(g);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= E(step) * g[i] / (std::sqrt(sumSquares_[i]) + eps_);
    }

   private:
    E eps_;
    MatType sumSquares_;
  };
};

struct AdaDeltaUpdate
{
  explicit AdaDeltaUpdate(double rhoIn = 0.95, double epsilonIn = 1e-6)
      : rho(rhoIn), epsilon(epsilonIn) {}

  double rho;
  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const AdaDeltaUpdate& parent, std::size_t rows, std::size_t cols)
        : rho_(E(parent.rho)), eps_(E(parent.epsilon)),
          meanSqGrad_(rows, cols), meanSqDelta_(rows, cols) {}

    // Step-size free: the per-coordinate step is RMS(delta) / RMS(g) with
    // RMS(v) = sqrt(E[v^2] + eps).
    void update(MatType& x, double /* step */, const MatType& g)
    {
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        meanSqGrad_[i] = rho_ * meanSqGrad_[i] + (E(1) - rho_) * g[i] * g[i];
        const E delta = (std::sqrt(meanSqDelta_[i] + eps_) /
                         std::sqrt(meanSqGrad_[i] + eps_)) * g[i];
        x[i] -= delta;
        meanSqDelta_[i] =
            rho_ * meanSqDelta_[i] + (E(1) - rho_) * delta * delta;
      }
    }

   private:
    E rho_, eps_;
    MatType meanSqGrad_, meanSqDelta_;
  };
};

struct RmsPropUpdate
{
  explicit RmsPropUpdate(double rhoIn = 0.99, double epsilonIn = 1e-8)
      : rho(rhoIn), epsilon(epsilonIn) {}

  double rho;
  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const RmsPropUpdate& parent, std::size_t rows, std::size_t cols)
        : rho_(E(parent.rho)), eps_(E(parent.epsilon)), meanSq_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        meanSq_[i] = rho_ * meanSq_[i] + (E(1) - rho_) * g[i] * g[i];
        x[i] -= E(step) * g[i] / (std::sqrt(meanSq_[i]) + eps_);
      }
    }

   private:
    E rho_, eps_;
    MatType meanSq_;
  };
};

struct Smorms3Update
{
  explicit Smorms3Update(double epsilonIn = 1e-16) : epsilon(epsilonIn) {}

  double epsilon;

  template<typename MatType>
  class Policy
  {
   public:
    using E = typename MatType::elem_type;

    Policy(const Smorms3Update& parent, std::size_t rows, std::size_t cols)
        : eps_(E(parent.epsilon)), mem_(rows, cols, E(1)),
          g1_(rows, cols), g2_(rows, cols) {}

    void update(MatType& x, double step, const MatType& g)
    {
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        const E r = E(1) / (mem_[i] + E(1));
        g1_[i] = (E(1) - r) * g1_[i] + r * g[i];
        g2_[i] = (E(1) - r) * g2_[i] + r * g[i] * g[i];
        const E zeta = (g1_[i] * g1_[i]) / (g2_[i] + eps_);
        x[i] -= g[i] * std::min(E(step), zeta) / (std::sqrt(g2_[i]) + eps_);
        mem_[i] = E(1) + mem_[i] * (E(1) - zeta);
      }
    }

   private:
    E eps_;
    MatType mem_, g1_, g2_;
  };
};

}  // namespace flexopt
