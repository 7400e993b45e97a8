#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "argeslab/search.hpp"

namespace argeslab::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3, kNumeric = 4 };

/// Entry point of the `argeslab` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string report_to_json(const LearnReport& rep);

}  // namespace argeslab::cli
