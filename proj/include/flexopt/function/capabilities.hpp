#pragma once

#include <concepts>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace flexopt {

// Method-detection concepts.  A capability is present iff the user objective
// supplies a method callable with the framework's signature for the given
// coordinate type.

template<typename F, typename MatType>
concept HasEvaluate = requires(F& f, const MatType& x)
{
  { f.evaluate(x) } -> std::convertible_to<typename MatType::elem_type>;
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasGradient = requires(F& f, const MatType& x, GradType& g)
{
  f.gradient(x, g);
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasEvaluateWithGradient = requires(F& f, const MatType& x, GradType& g)
{
  { f.evaluate_with_gradient(x, g) }
      -> std::convertible_to<typename MatType::elem_type>;
};

template<typename F, typename MatType>
concept HasSeparableEvaluate =
    requires(F& f, const MatType& x, std::size_t i, std::size_t n)
{
  { f.evaluate(x, i, n) } -> std::convertible_to<typename MatType::elem_type>;
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasSeparableGradient =
    requires(F& f, const MatType& x, std::size_t i, GradType& g, std::size_t n)
{
  f.gradient(x, i, g, n);
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasSeparableEvaluateWithGradient =
    requires(F& f, const MatType& x, std::size_t i, GradType& g, std::size_t n)
{
  { f.evaluate_with_gradient(x, i, g, n) }
      -> std::convertible_to<typename MatType::elem_type>;
};

template<typename F>
concept HasNumFunctions = requires(const F& f)
{
  { f.num_functions() } -> std::convertible_to<std::size_t>;
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasPartialGradient =
    requires(F& f, const MatType& x, std::size_t j, GradType& g)
{
  f.partial_gradient(x, j, g);
};

template<typename F>
concept HasNumFeatures = requires(const F& f)
{
  { f.num_features() } -> std::convertible_to<std::size_t>;
};

template<typename F>
concept HasNumConstraints = requires(const F& f)
{
  { f.num_constraints() } -> std::convertible_to<std::size_t>;
};

template<typename F, typename MatType>
concept HasEvaluateConstraint = requires(F& f, std::size_t i, const MatType& x)
{
  { f.evaluate_constraint(i, x) }
      -> std::convertible_to<typename MatType::elem_type>;
};

template<typename F, typename MatType, typename GradType = MatType>
concept HasGradientConstraint =
    requires(F& f, std::size_t i, const MatType& x, GradType& g)
{
  f.gradient_constraint(i, x, g);
};

template<typename F, typename MatType>
concept HasConstraints = HasNumConstraints<F> &&
    HasEvaluateConstraint<F, MatType> && HasGradientConstraint<F, MatType>;

template<typename F>
concept HasCategoricalInfo = requires(const F& f)
{
  f.categorical_dimensions();
};

template<typename F, typename MatType>
concept HasInitialPoint = requires(const F& f)
{
  { f.initial_point() } -> std::convertible_to<MatType>;
};

/// Which methods a user objective supplies (or, after closure, which methods
/// the framework can provide).  Derivable flags are always computed from the
/// wrapped type, never user-asserted.
struct CapabilitySet
{
  bool has_evaluate = false;
  bool has_gradient = false;
  bool has_evaluate_with_gradient = false;
  bool has_separable_evaluate = false;
  bool has_separable_gradient = false;
  bool has_separable_evaluate_with_gradient = false;
  bool has_num_functions = false;
  bool has_partial_gradient = false;
  bool has_num_features = false;
  bool has_constraints = false;
  bool has_categorical_info = false;
  bool has_initial_point = false;

  bool operator==(const CapabilitySet&) const = default;
};

/// Reflects the methods supplied by F for coordinate type MatType.  Pure:
/// invokes no user methods.
template<typename F, typename MatType, typename GradType = MatType>
constexpr CapabilitySet detect_capabilities()
{
  CapabilitySet c;
  c.has_evaluate = HasEvaluate<F, MatType>;
  c.has_gradient = HasGradient<F, MatType, GradType>;
  c.has_evaluate_with_gradient = HasEvaluateWithGradient<F, MatType, GradType>;
  c.has_separable_evaluate = HasSeparableEvaluate<F, MatType>;
  c.has_separable_gradient = HasSeparableGradient<F, MatType, GradType>;
  c.has_separable_evaluate_with_gradient =
      HasSeparableEvaluateWithGradient<F, MatType, GradType>;
  c.has_num_functions = HasNumFunctions<F>;
  c.has_partial_gradient = HasPartialGradient<F, MatType, GradType>;
  c.has_num_features = HasNumFeatures<F>;
  c.has_constraints = HasConstraints<F, MatType>;
  c.has_categorical_info = HasCategoricalInfo<F>;
  c.has_initial_point = HasInitialPoint<F, MatType>;
  return c;
}

/// Closure of a capability set under the method-inference rules:
///   (a) evaluate + gradient            => evaluate_with_gradient
///   (b) evaluate_with_gradient         => evaluate, gradient
///   (c) separable evaluate + count     => evaluate
///   (d) separable gradient + count     => gradient
///   (e) separable combined + count     => evaluate, gradient
constexpr CapabilitySet infer_closure(CapabilitySet c)
{
  for (int pass = 0; pass < 2; ++pass)
  {
    if (c.has_num_functions)
    {
      if (c.has_separable_evaluate)
        c.has_evaluate = true;
      if (c.has_separable_gradient)
        c.has_gradient = true;
      if (c.has_separable_evaluate_with_gradient)
      {
        c.has_evaluate = true;
        c.has_gradient = true;
      }
    }
    if (c.has_evaluate && c.has_gradient)
      c.has_evaluate_with_gradient = true;
    if (c.has_evaluate_with_gradient)
    {
      c.has_evaluate = true;
      c.has_gradient = true;
    }
  }
  return c;
}

enum class FunctionClass
{
  Arbitrary,
  Differentiable,
  PartiallyDifferentiable,
  ArbitrarySeparable,
  DifferentiableSeparable,
  Categorical,
  Constrained
};

inline const char* to_string(FunctionClass c)
{
  switch (c)
  {
    case FunctionClass::Arbitrary: return "arbitrary";
    case FunctionClass::Differentiable: return "differentiable";
    case FunctionClass::PartiallyDifferentiable:
      return "partially differentiable";
    case FunctionClass::ArbitrarySeparable: return "arbitrary separable";
    case FunctionClass::DifferentiableSeparable:
      return "differentiable separable";
    case FunctionClass::Categorical: return "categorical";
    case FunctionClass::Constrained: return "constrained";
  }
  return "unknown";
}

/// True iff the capability set admits the given function class.  Applied to
/// the set exactly as given; callers wanting inference should close the set
/// first with infer_closure().
constexpr bool satisfies(const CapabilitySet& c, FunctionClass cls)
{
  const bool differentiable =
      (c.has_evaluate && c.has_gradient) || c.has_evaluate_with_gradient;
  switch (cls)
  {
    case FunctionClass::Arbitrary:
      return c.has_evaluate;
    case FunctionClass::Differentiable:
      return differentiable;
    case FunctionClass::PartiallyDifferentiable:
      return c.has_partial_gradient && c.has_num_features && c.has_evaluate;
    case FunctionClass::ArbitrarySeparable:
      return c.has_separable_evaluate && c.has_num_functions;
    case FunctionClass::DifferentiableSeparable:
      return c.has_num_functions &&
          ((c.has_separable_evaluate && c.has_separable_gradient) ||
           c.has_separable_evaluate_with_gradient);
    case FunctionClass::Categorical:
      return c.has_evaluate && c.has_categorical_info;
    case FunctionClass::Constrained:
      return differentiable && c.has_constraints;
  }
  return false;
}

struct RequirementCheck
{
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
};

namespace detail {

inline std::string supplied_method_list(const CapabilitySet& c)
{
  std::vector<std::string> names;
  if (c.has_evaluate) names.push_back("evaluate()");
  if (c.has_gradient) names.push_back("gradient()");
  if (c.has_evaluate_with_gradient) names.push_back("evaluate_with_gradient()");
  if (c.has_separable_evaluate) names.push_back("separable evaluate()");
  if (c.has_separable_gradient) names.push_back("separable gradient()");
  if (c.has_separable_evaluate_with_gradient)
    names.push_back("separable evaluate_with_gradient()");
  if (c.has_num_functions) names.push_back("num_functions()");
  if (c.has_partial_gradient) names.push_back("partial_gradient()");
  if (c.has_num_features) names.push_back("num_features()");
  if (c.has_constraints)
    names.push_back("num_constraints()/evaluate_constraint()/"
                    "gradient_constraint()");
  if (c.has_categorical_info) names.push_back("categorical_dimensions()");
  if (names.empty())
    return "(none)";
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i)
  {
    if (i > 0)
      out += ", ";
    out += names[i];
  }
  return out;
}

inline std::string missing_method_list(const CapabilitySet& c,
                                       FunctionClass cls)
{
  std::vector<std::string> missing;
  switch (cls)
  {
    case FunctionClass::Arbitrary:
      missing.push_back("evaluate()");
      break;
    case FunctionClass::Differentiable:
      if (!c.has_evaluate) missing.push_back("evaluate()");
      if (!c.has_gradient) missing.push_back("gradient()");
      missing.push_back("evaluate_with_gradient() [alternative to the above]");
      break;
    case FunctionClass::PartiallyDifferentiable:
      if (!c.has_evaluate) missing.push_back("evaluate()");
      if (!c.has_partial_gradient) missing.push_back("partial_gradient()");
      if (!c.has_num_features) missing.push_back("num_features()");
      break;
    case FunctionClass::ArbitrarySeparable:
      if (!c.has_separable_evaluate) missing.push_back("separable evaluate()");
      if (!c.has_num_functions) missing.push_back("num_functions()");
      break;
    case FunctionClass::DifferentiableSeparable:
      if (!c.has_separable_evaluate) missing.push_back("separable evaluate()");
      if (!c.has_separable_gradient) missing.push_back("separable gradient()");
      missing.push_back(
          "separable evaluate_with_gradient() [alternative to the above]");
      if (!c.has_num_functions) missing.push_back("num_functions()");
      break;
    case FunctionClass::Categorical:
      if (!c.has_evaluate) missing.push_back("evaluate()");
      if (!c.has_categorical_info)
        missing.push_back("categorical_dimensions()");
      break;
    case FunctionClass::Constrained:
      if (!c.has_evaluate) missing.push_back("evaluate()");
      if (!c.has_gradient) missing.push_back("gradient()");
      if (!c.has_constraints)
        missing.push_back("num_constraints()/evaluate_constraint()/"
                          "gradient_constraint()");
      break;
  }
  std::string out;
  for (std::size_t i = 0; i < missing.size(); ++i)
  {
    if (i > 0)
      out += ", ";
    out += missing[i];
  }
  return out;
}

}  // namespace detail

/// Check a capability set against a required function class, producing a
/// human-readable diagnostic on failure.  The diagnostic names the required
/// class, the missing methods, and the supplied methods; optimizers surface
/// it before any iteration runs.
inline RequirementCheck check_requirements(const CapabilitySet& c,
                                           FunctionClass cls)
{
  if (satisfies(c, cls))
    return {};
  std::ostringstream msg;
  msg << "The given objective function does not have a correct definition of "
         "the methods required by the " << to_string(cls)
      << " function class.\n"
      << "  Supplied methods: " << detail::supplied_method_list(c) << "\n"
      << "  Missing methods: " << detail::missing_method_list(c, cls) << "\n"
      << "Please check that the objective function fully satisfies the "
      << to_string(cls) << " function requirements.";
  return { false, msg.str() };
}

/// Raised when an optimizer (or a synthesized method) is used with an
/// objective that does not provide the needed capabilities.
class CapabilityError : public std::runtime_error
{
 public:
  explicit CapabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace flexopt
