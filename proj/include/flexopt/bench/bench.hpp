#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "flexopt/core/matrix.hpp"
#include "flexopt/core/report.hpp"
#include "flexopt/core/seed.hpp"
#include "flexopt/optimizers/lbfgs.hpp"
#include "flexopt/optimizers/sgd.hpp"
#include "flexopt/optimizers/simulated_annealing.hpp"
#include "flexopt/problems/linear_regression.hpp"
#include "flexopt/problems/rosenbrock.hpp"
#include "flexopt/problems/synthetic_regression.hpp"

namespace flexopt {
namespace bench {

/// Everything the command-line harness needs to know about one run.
struct BenchConfig
{
  std::uint64_t seed = default_seed;
  std::size_t n = 1000;
  std::size_t d = 100;
  double noise = 1.0;
  std::size_t epochs = 5;
  double step_size = 0.01;
  std::size_t batch_size = 32;
  std::string output;        // empty = stdout
  std::string format = "csv";  // "csv" or "tsv"
};

struct CurveRow
{
  std::string problem;
  std::string optimizer;
  std::size_t epoch = 0;
  std::size_t evaluations = 0;
  double objective = 0.0;
  double elapsed_seconds = 0.0;
};

/// Round-trippable decimal formatting for CSV numeric fields.
inline std::string format_number(double value)
{
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer);
}

// ---------------------------------------------------------------------------
// rosenbrock-sa: simulated annealing on the Rosenbrock function with the
// classic parameter set (100000 iterations, T0 = 10000, 1000 burn-in moves,
// 100 moves per sweep, tolerance 0).
// ---------------------------------------------------------------------------

struct RosenbrockSaResult
{
  OptimizationReport<Mat> report;
};

inline RosenbrockSaResult run_rosenbrock_sa(const BenchConfig& config)
{
  RosenbrockFunction rosenbrock;
  SimulatedAnnealing<ExponentialSchedule> sa(
      ExponentialSchedule(), 100000, 10000.0, 1000, 100, 0.0, config.seed);
  Mat x = rosenbrock.initial_point();
  RosenbrockSaResult result;
  result.report = sa.optimize(rosenbrock, x);
  return result;
}

// ---------------------------------------------------------------------------
// linreg-lbfgs: the same seeded least-squares problem optimized twice with
// 10 L-BFGS iterations — once through a combined objective+gradient method,
// once through separate evaluate/gradient methods — counting how often each
// variant computes the residual X theta - y.
// ---------------------------------------------------------------------------

struct LinregLbfgsVariantResult
{
  OptimizationReport<Mat> report;
  std::size_t residual_computations = 0;
  std::size_t requests = 0;  // objective+gradient requests by the optimizer
};

struct LinregLbfgsResult
{
  LinregLbfgsVariantResult combined;
  LinregLbfgsVariantResult separate;
};

inline LinregLbfgsResult run_linreg_lbfgs(const BenchConfig& config)
{
  const SyntheticRegressionData data =
      synthetic_regression(config.n, config.d, config.noise, config.seed);

  LinregLbfgsResult result;
  {
    LinearRegressionCombinedFunction f(data.X, data.y);
    Lbfgs lbfgs(10, 10, 1e-6);
    Mat theta(config.d, 1, 0.0);
    result.combined.report = lbfgs.optimize(f, theta);
    result.combined.residual_computations = f.residual_computations();
    result.combined.requests = result.combined.report.combined;
  }
  {
    LinearRegressionFunction f(data.X, data.y);
    Lbfgs lbfgs(10, 10, 1e-6);
    Mat theta(config.d, 1, 0.0);
    result.separate.report = lbfgs.optimize(f, theta);
    result.separate.residual_computations = f.residual_computations();
    result.separate.requests = result.separate.report.evaluations;
  }
  return result;
}

// ---------------------------------------------------------------------------
// curves: six stochastic optimizers on the same seeded least-squares problem
// for a fixed number of epochs, logging the objective after every epoch.
// ---------------------------------------------------------------------------

struct CurvesResult
{
  std::vector<CurveRow> rows;
  std::vector<std::string> optimizer_names;
  std::vector<double> initial_objectives;  // parallel to optimizer_names
  std::vector<double> final_objectives;    // parallel to optimizer_names
};

namespace detail {

/// Callback that appends one CurveRow per epoch.
struct CurveRecorder
{
  std::string problem;
  std::string optimizer;
  std::vector<CurveRow>* rows;
  std::chrono::steady_clock::time_point start;

  template<typename Opt, typename Fn, typename MatType>
  void end_epoch(Opt&, Fn& f, const MatType&, std::size_t epoch,
                 double objective)
  {
    CurveRow row;
    row.problem = problem;
    row.optimizer = optimizer;
    row.epoch = epoch;
    row.evaluations = f.evaluations();
    row.objective = objective;
    row.elapsed_seconds = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    rows->push_back(row);
  }
};

template<typename Optimizer>
void run_one_curve(const BenchConfig& config, const std::string& name,
                   const LinearRegressionFunction& objective,
                   CurvesResult& out)
{
  using PolicyType = decltype(Optimizer().update_policy());
  Optimizer optimizer(config.step_size, config.batch_size,
                      /* maxIterations */ std::size_t(-1),
                      /* tolerance */ 0.0, /* shuffle */ true,
                      std::remove_reference_t<PolicyType>(), config.seed);
  optimizer.max_epochs() = config.epochs;

  LinearRegressionFunction f = objective;
  Mat theta(config.d, 1, 0.0);
  out.optimizer_names.push_back(name);
  out.initial_objectives.push_back(f.evaluate(theta));

  CurveRecorder recorder{"linreg", name, &out.rows,
                         std::chrono::steady_clock::now()};
  const OptimizationReport<Mat> report =
      optimizer.optimize(f, theta, recorder);
  out.final_objectives.push_back(double(report.final_objective));
}

}  // namespace detail

inline CurvesResult run_curves(const BenchConfig& config)
{
  const SyntheticRegressionData data =
      synthetic_regression(config.n, config.d, config.noise, config.seed);
  const LinearRegressionFunction objective(data.X, data.y);

  CurvesResult result;
  detail::run_one_curve<StandardSgd>(config, "sgd", objective, result);
  detail::run_one_curve<Adam>(config, "adam", objective, result);
  detail::run_one_curve<AdaGrad>(config, "adagrad", objective, result);
  detail::run_one_curve<Smorms3>(config, "smorms3", objective, result);
  detail::run_one_curve<MomentumSgd>(config, "momentum-sgd", objective,
                                     result);
  detail::run_one_curve<RmsProp>(config, "rmsprop", objective, result);
  return result;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline void write_curve_rows(std::ostream& out,
                             const std::vector<CurveRow>& rows,
                             const std::string& format,
                             const std::vector<std::string>& comments)
{
  if (format != "csv" && format != "tsv")
    throw std::invalid_argument("format must be 'csv' or 'tsv'");
  const char sep = (format == "tsv") ? '\t' : ',';

  for (const std::string& comment : comments)
    out << "# " << comment << '\n';
  out << "problem" << sep << "optimizer" << sep << "epoch" << sep
      << "evaluations" << sep << "objective" << sep << "elapsed_seconds"
      << '\n';
  for (const CurveRow& row : rows)
  {
    out << row.problem << sep << row.optimizer << sep << row.epoch << sep
        << row.evaluations << sep << format_number(row.objective) << sep
        << format_number(row.elapsed_seconds) << '\n';
  }
}

/// Writes to `path` (or stdout when empty); removes a partial file on error.
inline void write_curve_file(const std::string& path,
                             const std::vector<CurveRow>& rows,
                             const std::string& format,
                             const std::vector<std::string>& comments)
{
  if (path.empty())
  {
    write_curve_rows(std::cout, rows, format, comments);
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path);
  try
  {
    write_curve_rows(out, rows, format, comments);
    out.flush();
    if (!out)
      throw std::runtime_error("failed writing output file: " + path);
  }
  catch (...)
  {
    out.close();
    std::remove(path.c_str());
    throw;
  }
}

inline std::vector<std::string> curve_comments(const BenchConfig& config)
{
  return {
    "flexopt curves: six stochastic optimizers on seeded least-squares data",
    "seed=" + std::to_string(config.seed) +
        " n=" + std::to_string(config.n) +
        " d=" + std::to_string(config.d) +
        " noise=" + format_number(config.noise) +
        " epochs=" + std::to_string(config.epochs) +
        " step-size=" + format_number(config.step_size) +
        " batch-size=" + std::to_string(config.batch_size),
    "note: momentum-sgd is used as the sixth optimizer in place of SPALeRA",
  };
}

}  // namespace bench
}  // namespace flexopt
