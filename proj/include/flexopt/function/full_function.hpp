#pragma once

#include <cstddef>
#include <utility>

#include "flexopt/function/capabilities.hpp"

namespace flexopt {

/**
 * Wrapper that completes a user objective with every method the inference
 * rules admit.  Optimizers work against this wrapper, never the raw user
 * type, so a user function can supply any consistent subset of methods.
 *
 * Synthesized call order is fixed (evaluate before gradient; separable parts
 * in ascending index) so results are bit-for-bit reproducible.  Counters
 * track user-method invocations; synthesized methods count their constituent
 * calls.  Counters are unsynchronized; a wrapper must not be shared by
 * concurrent optimization runs.
 */
template<typename F, typename MatType, typename GradType = MatType>
class FullFunction
{
 public:
  using elem_type = typename MatType::elem_type;

  static constexpr CapabilitySet supplied_capabilities =
      detect_capabilities<F, MatType, GradType>();
  static constexpr CapabilitySet capabilities =
      infer_closure(supplied_capabilities);

  static constexpr bool can_evaluate = capabilities.has_evaluate;
  static constexpr bool can_gradient = capabilities.has_gradient;
  static constexpr bool can_evaluate_with_gradient =
      capabilities.has_evaluate_with_gradient;

  explicit FullFunction(F& function) : inner_(function) {}

  F& inner() { return inner_; }
  const F& inner() const { return inner_; }

  std::size_t evaluations() const { return evaluations_; }
  std::size_t gradients() const { return gradients_; }
  std::size_t combined() const { return combined_; }

  void reset_counters()
  {
    evaluations_ = 0;
    gradients_ = 0;
    combined_ = 0;
  }

  elem_type evaluate(const MatType& x)
  {
    if constexpr (HasEvaluate<F, MatType>)
    {
      ++evaluations_;
      return inner_.evaluate(x);
    }
    else if constexpr (HasEvaluateWithGradient<F, MatType, GradType>)
    {
      ++combined_;
      GradType scratch;
      return inner_.evaluate_with_gradient(x, scratch);
    }
    else if constexpr (HasSeparableEvaluate<F, MatType> && HasNumFunctions<F>)
    {
      // Left-to-right summation in ascending part index.
      elem_type sum = elem_type(0);
      const std::size_t n = inner_.num_functions();
      for (std::size_t i = 0; i < n; ++i)
      {
        ++evaluations_;
        sum += inner_.evaluate(x, i, 1);
      }
      return sum;
    }
    else if constexpr (HasSeparableEvaluateWithGradient<F, MatType, GradType> &&
                       HasNumFunctions<F>)
    {
      elem_type sum = elem_type(0);
      const std::size_t n = inner_.num_functions();
      GradType scratch;
      for (std::size_t i = 0; i < n; ++i)
      {
        ++combined_;
        sum += inner_.evaluate_with_gradient(x, i, scratch, 1);
      }
      return sum;
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities, FunctionClass::Arbitrary).message);
    }
  }

  void gradient(const MatType& x, GradType& g)
  {
    if constexpr (HasGradient<F, MatType, GradType>)
    {
      ++gradients_;
      inner_.gradient(x, g);
    }
    else if constexpr (HasEvaluateWithGradient<F, MatType, GradType>)
    {
      ++combined_;
      (void) inner_.evaluate_with_gradient(x, g);
    }
    else if constexpr (HasSeparableGradient<F, MatType, GradType> &&
                       HasNumFunctions<F>)
    {
      g.set_size(x.rows(), x.cols());
      GradType part;
      const std::size_t n = inner_.num_functions();
      for (std::size_t i = 0; i < n; ++i)
      {
        ++gradients_;
        inner_.gradient(x, i, part, 1);
        g += part;
      }
    }
    else if constexpr (HasSeparableEvaluateWithGradient<F, MatType, GradType> &&
                       HasNumFunctions<F>)
    {
      g.set_size(x.rows(), x.cols());
      GradType part;
      const std::size_t n = inner_.num_functions();
      for (std::size_t i = 0; i < n; ++i)
      {
        ++combined_;
        (void) inner_.evaluate_with_gradient(x, i, part, 1);
        g += part;
      }
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::Differentiable).message);
    }
  }

  elem_type evaluate_with_gradient(const MatType& x, GradType& g)
  {
    if constexpr (HasEvaluateWithGradient<F, MatType, GradType>)
    {
      // The user's combined method is the shared-computation path; call it
      // exactly once.
      ++combined_;
      return inner_.evaluate_with_gradient(x, g);
    }
    else if constexpr (can_evaluate && can_gradient)
    {
      const elem_type objective = evaluate(x);
      gradient(x, g);
      return objective;
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::Differentiable).message);
    }
  }

  // Separable surface.

  std::size_t num_functions() const
      requires HasNumFunctions<F>
  { return inner_.num_functions(); }

  elem_type evaluate(const MatType& x, std::size_t first, std::size_t batch)
  {
    if constexpr (HasSeparableEvaluate<F, MatType>)
    {
      ++evaluations_;
      return inner_.evaluate(x, first, batch);
    }
    else if constexpr (HasSeparableEvaluateWithGradient<F, MatType, GradType>)
    {
      ++combined_;
      GradType scratch;
      return inner_.evaluate_with_gradient(x, first, scratch, batch);
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::ArbitrarySeparable).message);
    }
  }

  void gradient(const MatType& x, std::size_t first, GradType& g,
                std::size_t batch)
  {
    if constexpr (HasSeparableGradient<F, MatType, GradType>)
    {
      ++gradients_;
      inner_.gradient(x, first, g, batch);
    }
    else if constexpr (HasSeparableEvaluateWithGradient<F, MatType, GradType>)
    {
      ++combined_;
      (void) inner_.evaluate_with_gradient(x, first, g, batch);
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::DifferentiableSeparable).message);
    }
  }

  elem_type evaluate_with_gradient(const MatType& x, std::size_t first,
                                   GradType& g, std::size_t batch)
  {
    if constexpr (HasSeparableEvaluateWithGradient<F, MatType, GradType>)
    {
      ++combined_;
      return inner_.evaluate_with_gradient(x, first, g, batch);
    }
    else if constexpr (HasSeparableEvaluate<F, MatType> &&
                       HasSeparableGradient<F, MatType, GradType>)
    {
      const elem_type objective = evaluate(x, first, batch);
      gradient(x, first, g, batch);
      return objective;
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::DifferentiableSeparable).message);
    }
  }

  // Partially differentiable surface.

  std::size_t num_features() const
      requires HasNumFeatures<F>
  { return inner_.num_features(); }

  void partial_gradient(const MatType& x, std::size_t j, GradType& g)
  {
    if constexpr (HasPartialGradient<F, MatType, GradType>)
    {
      ++gradients_;
      inner_.partial_gradient(x, j, g);
    }
    else
    {
      throw CapabilityError(
          check_requirements(capabilities,
                             FunctionClass::PartiallyDifferentiable).message);
    }
  }

  // Constrained surface.

  std::size_t num_constraints() const
      requires HasNumConstraints<F>
  { return inner_.num_constraints(); }

  elem_type evaluate_constraint(std::size_t i, const MatType& x)
      requires HasEvaluateConstraint<F, MatType>
  { return inner_.evaluate_constraint(i, x); }

  void gradient_constraint(std::size_t i, const MatType& x, GradType& g)
      requires HasGradientConstraint<F, MatType, GradType>
  { inner_.gradient_constraint(i, x, g); }

  // Categorical surface.

  decltype(auto) categorical_dimensions() const
      requires HasCategoricalInfo<F>
  { return inner_.categorical_dimensions(); }

  MatType initial_point() const
      requires HasInitialPoint<F, MatType>
  { return inner_.initial_point(); }

 private:
  F& inner_;
  std::size_t evaluations_ = 0;
  std::size_t gradients_ = 0;
  std::size_t combined_ = 0;
};

/// Wrap a user objective with the full inferred method set.
template<typename MatType, typename GradType = MatType, typename F>
FullFunction<F, MatType, GradType> wrap_full_function(F& function)
{ return FullFunction<F, MatType, GradType>(function); }

}  // namespace flexopt
