// flexbench: small benchmark harness for the flexopt library.
//
// Subcommands:
//   rosenbrock-sa   simulated annealing on the Rosenbrock function
//   linreg-lbfgs    combined vs. separate least-squares objective under L-BFGS
//   curves          six stochastic optimizers, objective per epoch, CSV/TSV
//
// Exit codes: 0 success, 1 usage error, 2 run failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexopt/bench/bench.hpp"

namespace {

using flexopt::bench::BenchConfig;
using flexopt::bench::format_number;

char separator_for(const std::string& format)
{
  return format == "tsv" ? '\t' : ',';
}

// Writes `lines` to config.output (stdout when empty); removes a partial
// file on failure.
int emit(const BenchConfig& config, const std::vector<std::string>& lines)
{
  if (config.output.empty())
  {
    for (const std::string& line : lines)
      std::cout << line << '\n';
    return 0;
  }
  std::ofstream out(config.output);
  if (!out)
  {
    std::cerr << "flexbench: cannot open output file: " << config.output
              << '\n';
    return 2;
  }
  for (const std::string& line : lines)
    out << line << '\n';
  out.flush();
  if (!out)
  {
    out.close();
    std::remove(config.output.c_str());
    std::cerr << "flexbench: failed writing output file: " << config.output
              << '\n';
    return 2;
  }
  return 0;
}

int run_rosenbrock_sa(const BenchConfig& config)
{
  const flexopt::bench::RosenbrockSaResult result =
      flexopt::bench::run_rosenbrock_sa(config);
  if (result.report.termination == flexopt::Termination::NumericalFailure)
  {
    std::cerr << "flexbench: rosenbrock-sa ended in numerical failure\n";
    return 2;
  }
  const char sep = separator_for(config.format);
  std::vector<std::string> lines;
  lines.push_back("# flexopt rosenbrock-sa seed=" +
                  std::to_string(config.seed));
  lines.push_back(std::string("problem") + sep + "optimizer" + sep +
                  "evaluations" + sep + "best_objective" + sep +
                  "elapsed_seconds");
  lines.push_back(std::string("rosenbrock") + sep + "simulated-annealing" +
                  sep + std::to_string(result.report.evaluations) + sep +
                  format_number(result.report.final_objective) + sep +
                  format_number(result.report.elapsed_seconds));
  return emit(config, lines);
}

int run_linreg_lbfgs(const BenchConfig& config)
{
  const flexopt::bench::LinregLbfgsResult result =
      flexopt::bench::run_linreg_lbfgs(config);
  if (result.combined.report.termination ==
          flexopt::Termination::NumericalFailure ||
      result.separate.report.termination ==
          flexopt::Termination::NumericalFailure)
  {
    std::cerr << "flexbench: linreg-lbfgs ended in numerical failure\n";
    return 2;
  }
  const char sep = separator_for(config.format);
  std::vector<std::string> lines;
  lines.push_back("# flexopt linreg-lbfgs seed=" +
                  std::to_string(config.seed) + " n=" +
                  std::to_string(config.n) + " d=" + std::to_string(config.d) +
                  " noise=" + format_number(config.noise));
  lines.push_back(std::string("problem") + sep + "variant" + sep +
                  "iterations" + sep + "requests" + sep +
                  "residual_computations" + sep + "final_objective" + sep +
                  "elapsed_seconds");
  const auto line = [&](const char* variant,
                        const flexopt::bench::LinregLbfgsVariantResult& v) {
    return std::string("linreg") + sep + variant + sep +
           std::to_string(v.report.iterations) + sep +
           std::to_string(v.requests) + sep +
           std::to_string(v.residual_computations) + sep +
           format_number(v.report.final_objective) + sep +
           format_number(v.report.elapsed_seconds);
  };
  lines.push_back(line("combined", result.combined));
  lines.push_back(line("separate", result.separate));
  return emit(config, lines);
}

int run_curves(const BenchConfig& config)
{
  const flexopt::bench::CurvesResult result =
      flexopt::bench::run_curves(config);
  flexopt::bench::write_curve_file(config.output, result.rows, config.format,
                                   flexopt::bench::curve_comments(config));
  return 0;
}

void add_common_flags(CLI::App* cmd, BenchConfig& config)
{
  cmd->add_option("--seed", config.seed, "Random seed (default 42)");
  cmd->add_option("--output", config.output,
                  "Output file path (default: stdout)");
  cmd->add_option("--format", config.format, "Output format: csv or tsv")
      ->check(CLI::IsMember({"csv", "tsv"}));
}

void add_regression_flags(CLI::App* cmd, BenchConfig& config)
{
  cmd->add_option("--n", config.n, "Number of samples");
  cmd->add_option("--d", config.d, "Number of features");
  cmd->add_option("--noise", config.noise, "Response noise level");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"flexbench: benchmark harness for the flexopt library"};
  app.require_subcommand(1);

  BenchConfig config;

  CLI::App* sa = app.add_subcommand(
      "rosenbrock-sa", "Simulated annealing on the Rosenbrock function");
  add_common_flags(sa, config);

  CLI::App* linreg = app.add_subcommand(
      "linreg-lbfgs",
      "L-BFGS least squares: combined vs. separate objective methods");
  add_common_flags(linreg, config);
  add_regression_flags(linreg, config);

  CLI::App* curves = app.add_subcommand(
      "curves", "Per-epoch objective curves for six stochastic optimizers");
  add_common_flags(curves, config);
  add_regression_flags(curves, config);
  curves->add_option("--epochs", config.epochs, "Number of epochs");
  curves->add_option("--step-size", config.step_size, "Optimizer step size");
  curves->add_option("--batch-size", config.batch_size, "Mini-batch size");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e)
  {
    std::cout << app.help();
    return 0;
  }
  catch (const CLI::ParseError& e)
  {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try
  {
    if (sa->parsed())
      return ::run_rosenbrock_sa(config);
    if (linreg->parsed())
      return ::run_linreg_lbfgs(config);
    return ::run_curves(config);
  }
  catch (const std::exception& e)
  {
    std::cerr << "flexbench: " << e.what() << '\n';
    return 2;
  }
}
