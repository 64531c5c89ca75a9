#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wwrank/error.hpp"

namespace wwrank::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 10,
  kUsage = 64,
  kParse = 65,
  kIo = 66,
  kAsymmetry = 67,
  kTies = 68,
  kInvalidArgument = 69,
  kConvergence = 70,
  kCapacity = 71,
  kInternal = 72,
};

int exit_code(Errc code) noexcept;

/// Runs the command line `args` (without the program name). Results go to
/// `out`; failures produce one JSON line {"error", "exit_code", "message"} on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wwrank::cli
