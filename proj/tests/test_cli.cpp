#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#include <unistd.h>
#else
static int getpid() { return 0; }
#endif

// FLEXBENCH_PATH is injected by the build system and points at the flexbench
// executable produced alongside this test.
#ifndef FLEXBENCH_PATH
#error "FLEXBENCH_PATH must be defined"
#endif

namespace {

struct RunResult
{
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path)
{
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path temp_path(const std::string& name)
{
  return std::filesystem::temp_directory_path() /
         ("flexbench_test_" + std::to_string(::getpid()) + "_" + name);
}

RunResult run(const std::string& args)
{
  const auto outPath = temp_path("stdout.txt");
  const auto errPath = temp_path("stderr.txt");
  const std::string command = std::string("\"") + FLEXBENCH_PATH + "\" " +
                              args + " > \"" + outPath.string() + "\" 2> \"" +
                              errPath.string() + "\"";
  const int raw = std::system(command.c_str());
  RunResult result;
#if defined(__unix__) || defined(__APPLE__)
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
#else
  result.exit_code = raw;
#endif
  result.out = slurp(outPath);
  result.err = slurp(errPath);
  std::filesystem::remove(outPath);
  std::filesystem::remove(errPath);
  return result;
}

std::vector<std::string> lines_of(const std::string& text)
{
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line, char sep)
{
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, sep))
    fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("no subcommand exits 1 with usage on stderr")
{
  const RunResult r = run("");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("--help exits 0 and lists the subcommands")
{
  const RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rosenbrock-sa") != std::string::npos);
  CHECK(r.out.find("linreg-lbfgs") != std::string::npos);
  CHECK(r.out.find("curves") != std::string::npos);
}

TEST_CASE("unknown flags exit 1")
{
  const RunResult r = run("curves --no-such-flag");
  CHECK(r.exit_code == 1);
  CHECK(!r.err.empty());
}

TEST_CASE("curves writes the documented csv schema")
{
  const auto csvPath = temp_path("curves.csv");
  const RunResult r = run("curves --seed 7 --n 200 --d 10 --output \"" +
                          csvPath.string() + "\"");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(slurp(csvPath));
  std::filesystem::remove(csvPath);

  // Three comment lines, one header, thirty data rows.
  REQUIRE(lines.size() == 34);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(lines[i].rfind("# ", 0) == 0);
  CHECK(lines[3] ==
        "problem,optimizer,epoch,evaluations,objective,elapsed_seconds");

  const std::vector<std::string> expectedOptimizers{
      "sgd", "adam", "adagrad", "smorms3", "momentum-sgd", "rmsprop"};
  for (std::size_t i = 4; i < lines.size(); ++i)
  {
    const auto fields = split(lines[i], ',');
    REQUIRE(fields.size() == 6);
    CHECK(fields[0] == "linreg");
    const std::size_t dataRow = i - 4;
    CHECK(fields[1] == expectedOptimizers[dataRow / 5]);
    CHECK(fields[2] == std::to_string(dataRow % 5 + 1));
    CHECK(std::stod(fields[4]) >= 0.0);
  }
}

TEST_CASE("curves --format tsv uses tab separators")
{
  const RunResult r = run("curves --seed 7 --n 100 --d 5 --format tsv");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 34);
  CHECK(lines[3] ==
        "problem\toptimizer\tepoch\tevaluations\tobjective\telapsed_seconds");
  CHECK(split(lines[4], '\t').size() == 6);
}

TEST_CASE("curves output is deterministic apart from timings")
{
  const auto strip_timing = [](const std::string& text) {
    std::vector<std::string> kept;
    for (const auto& line : lines_of(text))
    {
      if (line.rfind("# ", 0) == 0)
      {
        kept.push_back(line);
        continue;
      }
      const auto fields = split(line, ',');
      std::string joined;
      for (std::size_t i = 0; i + 1 < fields.size(); ++i)
        joined += fields[i] + ",";
      kept.push_back(joined);
    }
    std::string all;
    for (const auto& line : kept)
      all += line + "\n";
    return all;
  };
  const RunResult a = run("curves --seed 99 --n 200 --d 10");
  const RunResult b = run("curves --seed 99 --n 200 --d 10");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(strip_timing(a.out) == strip_timing(b.out));
}

TEST_CASE("rosenbrock-sa reports exactly its evaluation budget")
{
  const RunResult r = run("rosenbrock-sa --seed 5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[lines.size() - 2] ==
        "problem,optimizer,evaluations,best_objective,elapsed_seconds");
  const auto fields = split(lines.back(), ',');
  REQUIRE(fields.size() == 5);
  CHECK(fields[0] == "rosenbrock");
  CHECK(fields[1] == "simulated-annealing");
  CHECK(fields[2] == "100000");
}

TEST_CASE("linreg-lbfgs shows the combined form doing half the residual work")
{
  const RunResult r = run("linreg-lbfgs --seed 3 --n 200 --d 10");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() >= 3);
  const auto header = split(lines[lines.size() - 3], ',');
  REQUIRE(header.size() == 7);
  CHECK(header[1] == "variant");
  CHECK(header[4] == "residual_computations");

  const auto combined = split(lines[lines.size() - 2], ',');
  const auto separate = split(lines.back(), ',');
  REQUIRE(combined.size() == 7);
  REQUIRE(separate.size() == 7);
  CHECK(combined[1] == "combined");
  CHECK(separate[1] == "separate");
  // Same request sequence, but one residual pass per request instead of two.
  CHECK(combined[3] == separate[3]);
  CHECK(std::stoull(separate[4]) == 2 * std::stoull(combined[4]));
  CHECK(combined[5] == separate[5]);
}
