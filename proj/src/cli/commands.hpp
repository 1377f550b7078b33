#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace salem::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kConfigError = 2,
    kUsageError = 3,
    kIoError = 4,
    kQuadratureMismatch = 5,
    kNotDistributional = 6,
};

// 12 significant digits; negative zero prints as 0.
std::string format_real(double v);

// Entry point shared by the salemgen binary and the tests. `args` excludes
// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckOutcome {
    std::string name;
    enum class Status { Pass, Fail, Skip } status = Status::Pass;
    std::string detail;
};

// Invariant suite behind `salemgen verify`.
std::vector<CheckOutcome> run_verify_suite(const RunConfig& cfg);

}  // namespace salem::cli
