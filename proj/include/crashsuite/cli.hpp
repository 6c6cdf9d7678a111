#pragma once

#include "crashsuite/problem.hpp"

#include <ostream>
#include <string>

namespace crashsuite {

/// key=value lines printed by `crashsuite evaluate`.
std::string format_evaluation(const ProblemInstance& p, const EvaluationResult& r);

/// Entry point of the crashsuite executable; returns the process exit code
/// (0 ok, 2 usage, 3 solver failure, 4 parse failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crashsuite
