#pragma once

#include <concepts>
#include <cstddef>
#include <type_traits>
#include <utility>

namespace flexopt {

/// Decision returned by callback dispatch.
enum class CallbackDecision
{
  Continue,
  Terminate
};

namespace callbacks {

// A callback handles an event iff it has a method of the matching name that
// is callable with the event's arguments.  Handlers may return void (always
// continue) or bool (true requests termination).  Unhandled events are
// skipped silently; dispatch stops at the first handler requesting
// termination and does not invoke subsequent callbacks.

namespace detail {

template<typename R>
bool to_stop(R&& r)
{
  if constexpr (std::convertible_to<R, bool>)
    return static_cast<bool>(r);
  else
    return false;
}

}  // namespace detail

#define FLEXOPT_DEFINE_CALLBACK_EVENT(NAME, ...)                              \
  template<typename Cb, typename... Args>                                     \
  concept Handles_##NAME = requires(Cb& cb, Args&&... args)                   \
  {                                                                           \
    cb.NAME(std::forward<Args>(args)...);                                     \
  };                                                                          \
                                                                              \
  template<typename Cb, typename... Args>                                     \
  bool invoke_one_##NAME(Cb& cb, Args&&... args)                              \
  {                                                                           \
    if constexpr (Handles_##NAME<Cb, Args...>)                                \
    {                                                                         \
      if constexpr (std::is_void_v<decltype(                                  \
          cb.NAME(std::forward<Args>(args)...))>)                             \
      {                                                                       \
        cb.NAME(std::forward<Args>(args)...);                                 \
        return false;                                                         \
      }                                                                       \
      else                                                                    \
      {                                                                       \
        return detail::to_stop(cb.NAME(std::forward<Args>(args)...));         \
      }                                                                       \
    }                                                                         \
    else                                                                      \
    {                                                                         \
      return false;                                                           \
    }                                                                         \
  }

FLEXOPT_DEFINE_CALLBACK_EVENT(begin_optimization)
FLEXOPT_DEFINE_CALLBACK_EVENT(end_optimization)
FLEXOPT_DEFINE_CALLBACK_EVENT(evaluate)
FLEXOPT_DEFINE_CALLBACK_EVENT(evaluate_constraint)
FLEXOPT_DEFINE_CALLBACK_EVENT(gradient)
FLEXOPT_DEFINE_CALLBACK_EVENT(gradient_constraint)
FLEXOPT_DEFINE_CALLBACK_EVENT(begin_epoch)
FLEXOPT_DEFINE_CALLBACK_EVENT(end_epoch)
FLEXOPT_DEFINE_CALLBACK_EVENT(step_taken)

#undef FLEXOPT_DEFINE_CALLBACK_EVENT

// Dispatch helpers used by optimizers.  The || fold short-circuits, so
// callbacks after the first Terminate are not invoked.

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision begin_optimization(Opt& opt, Fn& f, MatType& x, Cbs&... cbs)
{
  const bool stop = (invoke_one_begin_optimization(cbs, opt, f, x) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision end_optimization(Opt& opt, Fn& f, MatType& x, Cbs&... cbs)
{
  const bool stop = (invoke_one_end_optimization(cbs, opt, f, x) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision evaluate(Opt& opt, Fn& f, const MatType& x, double objective,
                          Cbs&... cbs)
{
  const bool stop = (invoke_one_evaluate(cbs, opt, f, x, objective) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision evaluate_constraint(Opt& opt, Fn& f, const MatType& x,
                                     std::size_t index, double value,
                                     Cbs&... cbs)
{
  const bool stop =
      (invoke_one_evaluate_constraint(cbs, opt, f, x, index, value) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename GradType,
         typename... Cbs>
CallbackDecision gradient(Opt& opt, Fn& f, const MatType& x,
                          const GradType& g, Cbs&... cbs)
{
  const bool stop = (invoke_one_gradient(cbs, opt, f, x, g) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename GradType,
         typename... Cbs>
CallbackDecision gradient_constraint(Opt& opt, Fn& f, const MatType& x,
                                     std::size_t index, const GradType& g,
                                     Cbs&... cbs)
{
  const bool stop =
      (invoke_one_gradient_constraint(cbs, opt, f, x, index, g) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision begin_epoch(Opt& opt, Fn& f, const MatType& x,
                             std::size_t epoch, double objective, Cbs&... cbs)
{
  const bool stop =
      (invoke_one_begin_epoch(cbs, opt, f, x, epoch, objective) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision end_epoch(Opt& opt, Fn& f, const MatType& x,
                           std::size_t epoch, double objective, Cbs&... cbs)
{
  const bool stop =
      (invoke_one_end_epoch(cbs, opt, f, x, epoch, objective) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

template<typename Opt, typename Fn, typename MatType, typename... Cbs>
CallbackDecision step_taken(Opt& opt, Fn& f, MatType& x, Cbs&... cbs)
{
  const bool stop = (invoke_one_step_taken(cbs, opt, f, x) || ...);
  return stop ? CallbackDecision::Terminate : CallbackDecision::Continue;
}

}  // namespace callbacks
}  // namespace flexopt
