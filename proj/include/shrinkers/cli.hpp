#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shrinkers::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kIoError = 3,
};

/// Runs `shrinkers <build|verify|sweep> [flags]`. `args` excludes the program
/// name. Reports go to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Column names of the sweep/verify CSV table.
std::vector<std::string> csv_columns();

}  // namespace shrinkers::cli
