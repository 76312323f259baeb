#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace teamltl::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kHolds = 0,        // HOLDS / SAT
    kFails = 1,        // FAILS / UNSAT
    kInputError = 2,   // usage or malformed input
    kUnsupported = 3,  // fragment without an algorithm, or an open problem
    kBudget = 4,       // a resource cap was hit
};

// `args` excludes the program name and the subcommand.
int cmd_check_path(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_check_model(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_sat(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_reduce(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_hyper(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Dispatches on args[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace teamltl::cli
