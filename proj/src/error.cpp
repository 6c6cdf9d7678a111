#include "crashsuite/error.hpp"

namespace crashsuite {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DimensionOutOfRange: return "dimension-out-of-range";
    case ErrorKind::UnknownObjective: return "unknown-objective";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NonPositiveMass: return "nonpositive-mass";
    case ErrorKind::ZOutOfExtent: return "z-out-of-extent";
    case ErrorKind::DegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::BandOverlap: return "band-overlap";
    case ErrorKind::InconsistentPartTable: return "inconsistent-part-table";
    case ErrorKind::SpawnFailure: return "spawn-failure";
    case ErrorKind::SolverFailed: return "solver-failure";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::MissingOutput: return "missing-output";
    case ErrorKind::MissingColumn: return "missing-column";
    case ErrorKind::NonMonotoneTime: return "non-monotone-time";
    case ErrorKind::MalformedNumber: return "malformed-number";
    case ErrorKind::DegenerateSeries: return "degenerate-series";
    case ErrorKind::Io: return "io-error";
    }
    return "unknown";
}

std::string_view to_string(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::Usage: return "usage";
    case ErrorCategory::Solver: return "solver";
    case ErrorCategory::Parse: return "parse";
    }
    return "unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::SpawnFailure:
    case ErrorKind::SolverFailed:
    case ErrorKind::Timeout:
    case ErrorKind::MissingOutput:
    case ErrorKind::Io:
        return ErrorCategory::Solver;
    case ErrorKind::MissingColumn:
    case ErrorKind::NonMonotoneTime:
    case ErrorKind::MalformedNumber:
    case ErrorKind::DegenerateSeries:
        return ErrorCategory::Parse;
    default:
        return ErrorCategory::Usage;
    }
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail)
{
}

int exit_code_for(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::Usage: return 2;
    case ErrorCategory::Solver: return 3;
    case ErrorCategory::Parse: return 4;
    }
    return 1;
}

}  // namespace crashsuite
