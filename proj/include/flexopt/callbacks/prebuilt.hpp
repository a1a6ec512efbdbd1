#pragma once

#include <concepts>
#include <cstddef>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#if defined(__unix__) || defined(__APPLE__)
#include <unistd.h>
#endif

namespace flexopt {

/**
 * Stops the optimization when the epoch objective has not improved on its
 * best value for `patience` consecutive epochs.
 */
class EarlyStopAtMinLoss
{
 public:
  explicit EarlyStopAtMinLoss(std::size_t patience = 10)
      : patience_(patience) {}

  template<typename Opt, typename Fn, typename MatType>
  bool end_epoch(Opt&, Fn&, const MatType&, std::size_t /* epoch */,
                 double objective)
  {
    if (objective < best_)
    {
      best_ = objective;
      sinceImprovement_ = 0;
      return false;
    }
    return ++sinceImprovement_ >= patience_;
  }

 private:
  std::size_t patience_;
  std::size_t sinceImprovement_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

/**
 * Retains a copy of the coordinates with the lowest observed objective.
 * Query best_coordinates() / best_objective() after the run; has_best() is
 * false if nothing was observed.
 */
template<typename MatType>
class StoreBestCoordinates
{
 public:
  template<typename Opt, typename Fn>
  void evaluate(Opt&, Fn&, const MatType& coordinates, double objective)
  { observe(coordinates, objective); }

  template<typename Opt, typename Fn>
  void end_epoch(Opt&, Fn&, const MatType& coordinates, std::size_t,
                 double objective)
  { observe(coordinates, objective); }

  bool has_best() const { return best_.has_value(); }

  const MatType& best_coordinates() const
  {
    if (!best_)
      throw std::logic_error(
          "StoreBestCoordinates: no objective has been observed yet");
    return *best_;
  }

  double best_objective() const
  {
    if (!best_)
      throw std::logic_error(
          "StoreBestCoordinates: no objective has been observed yet");
    return bestObjective_;
  }

 private:
  void observe(const MatType& coordinates, double objective)
  {
    if (!best_ || objective < bestObjective_)
    {
      best_ = coordinates;
      bestObjective_ = objective;
    }
  }

  std::optional<MatType> best_;
  double bestObjective_ = std::numeric_limits<double>::infinity();
};

/// Writes one line per observed objective (Evaluate and EndEpoch events).
class PrintLoss
{
 public:
  explicit PrintLoss(std::ostream& sink = std::cout) : sink_(&sink) {}

  template<typename Opt, typename Fn, typename MatType>
  void evaluate(Opt&, Fn&, const MatType&, double objective)
  { (*sink_) << objective << '\n'; }

  template<typename Opt, typename Fn, typename MatType>
  void end_epoch(Opt&, Fn&, const MatType&, std::size_t epoch,
                 double objective)
  { (*sink_) << "epoch " << epoch << ": " << objective << '\n'; }

 private:
  std::ostream* sink_;
};

/**
 * Renders epoch progress as a textual bar.  Uses carriage-return redraw when
 * writing to a terminal and falls back to one line per update otherwise.
 * The total epoch count is read from the optimizer's max_epochs() accessor
 * when present.
 */
class ProgressBar
{
 public:
  explicit ProgressBar(std::ostream& sink = std::cout, std::size_t width = 40)
      : sink_(&sink), width_(width),
        terminal_(&sink == &std::cout && is_stdout_terminal()) {}

  template<typename Opt, typename Fn, typename MatType>
  void begin_optimization(Opt& opt, Fn&, MatType&)
  {
    total_ = total_epochs(opt);
    render(0);
  }

  template<typename Opt, typename Fn, typename MatType>
  void end_epoch(Opt&, Fn&, const MatType&, std::size_t epoch, double)
  { render(epoch); }

  template<typename Opt, typename Fn, typename MatType>
  void end_optimization(Opt&, Fn&, MatType&)
  {
    render(total_);
    (*sink_) << '\n';
  }

 private:
  template<typename Opt>
  static std::size_t total_epochs(Opt& opt)
  {
    if constexpr (requires { { opt.max_epochs() } -> std::convertible_to<std::size_t>; })
      return opt.max_epochs();
    else
      return 1;
  }

  static bool is_stdout_terminal()
  {
#if defined(__unix__) || defined(__APPLE__)
    return isatty(fileno(stdout)) != 0;
#else
    return false;
#endif
  }

  void render(std::size_t done)
  {
    if (total_ == 0)
      total_ = 1;
    if (done > total_)
      done = total_;
    const std::size_t percent = 100 * done / total_;
    const std::size_t filled = width_ * done / total_;
    (*sink_) << (terminal_ ? "\r" : "") << '[';
    for (std::size_t i = 0; i < width_; ++i)
      (*sink_) << (i < filled ? '=' : ' ');
    (*sink_) << "] " << percent << '%';
    if (!terminal_)
      (*sink_) << '\n';
    sink_->flush();
  }

  std::ostream* sink_;
  std::size_t width_;
  bool terminal_;
  std::size_t total_ = 1;
};

}  // namespace flexopt
