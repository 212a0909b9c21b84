#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace scx::cli {

enum ExitCode { kOk = 0, kUsage = 1, kBudget = 2, kVerifyFailed = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string family;
  std::string protocol;
  std::vector<double> r_grid;
  std::vector<int> n_grid;
  std::vector<double> alpha_grid;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 0;
  std::string format = "csv";
  std::string out;

  // protocol / types options
  std::optional<int> n;
  std::optional<std::uint32_t> zsize;
  std::optional<int> which;
  std::vector<int> type;
  std::optional<double> k_bits, r_bits;
  std::vector<double> q;
  double scale = 1.0;
};

struct CommandOutput {
  std::string text;
  int code = kOk;
};

// "0,0.5,1" or "start:stop:step" (inclusive).
std::vector<double> parse_real_grid(const std::string& spec);
std::vector<int> parse_int_grid(const std::string& spec);

// 17 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

// Throws InvalidInput on empty / non-increasing grids or a missing seed.
void validate(const RunConfig& c);

CommandOutput cmd_measures(const RunConfig& c);
CommandOutput cmd_exponent(const RunConfig& c);
CommandOutput cmd_converge(const RunConfig& c);
CommandOutput cmd_protocol(const RunConfig& c);
CommandOutput cmd_verify(const RunConfig& c);
CommandOutput cmd_types(const RunConfig& c);

CommandOutput dispatch(const RunConfig& c);

// Full front end: parses argv, runs, writes to out (or --out), reports errors
// on err, returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scx::cli
