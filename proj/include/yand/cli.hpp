#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "yand/optimizer.hpp"
#include "yand/problems.hpp"

namespace yand::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitBadArgs = 1,
  kExitMaxIter = 2,
  kExitLineSearch = 3,
  kExitCheckFailed = 4,
};

struct Config {
  double tol_grad = 1e-4;
  int max_iter = 200;
  double alpha0 = 1.0;
  double alpha_max = 10.0;
  double beta = 0.5;
  double c1 = 1e-4;
  double c2 = 0.9;
  double sigma = 1e-4;
  std::uint64_t seed = 42;

  StoppingSpec stopping() const { return {tol_grad, max_iter}; }
};

/// Parses `key=value` lines. Blank lines and everything after `#` are
/// ignored; whitespace around keys and values is trimmed. Values must parse
/// completely. Throws Errc::InvalidArgument on unknown keys, duplicates,
/// malformed values or out-of-range settings.
Config parse_config(std::istream& in, Config base = {});
Config load_config(const std::string& path, Config base = {});

/// Throws Errc::InvalidArgument when a field is outside its range.
void validate(const Config& config);

/// "exact", "armijo", "wolfe" or "fixed:<alpha>".
StepRule parse_step_rule(const std::string& text, const Config& config);
/// "yand", "gd", "newton" or "dnewton".
Method parse_method(const std::string& text);

/// Formats with 17 significant digits.
std::string format_double(double v);

int exit_code(RunStatus status);

/// Without an output path the trajectory CSV goes to `out` before the summary.
int cmd_run(const std::string& problem, const std::string& method, const std::string& step,
            const Config& config, const std::optional<std::string>& out_path, std::ostream& out,
            std::ostream& err);

void write_trajectory_csv(const RunReport& report, std::ostream& os);

int cmd_table2(const Config& config, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

int cmd_examples(const std::optional<std::string>& out_path, std::ostream& out,
                 std::ostream& err);

int cmd_invariance(const std::vector<double>& gammas, const Config& config,
                   const std::optional<std::string>& out_path, std::ostream& out,
                   std::ostream& err);

int cmd_verify(const Config& config, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);
/// Same as above over an explicit problem list.
int cmd_verify(const std::vector<Problem>& problems, const Config& config,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err);

}  // namespace yand::cli
