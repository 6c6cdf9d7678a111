#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crashsuite {

enum class ErrorKind {
    DimensionOutOfRange,
    UnknownObjective,
    OutOfDomain,
    InvalidArgument,
    NonPositiveMass,
    ZOutOfExtent,
    DegenerateGeometry,
    BandOverlap,
    InconsistentPartTable,
    SpawnFailure,
    SolverFailed,
    Timeout,
    MissingOutput,
    MissingColumn,
    NonMonotoneTime,
    MalformedNumber,
    DegenerateSeries,
    Io,
};

/// Coarse grouping used for CLI exit codes and binding exception messages.
enum class ErrorCategory { Usage, Solver, Parse };

std::string_view to_string(ErrorKind kind);
std::string_view to_string(ErrorCategory category);
ErrorCategory category_of(ErrorKind kind);

/// Every failure raised by the library. what() is "<kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// 0 ok, 2 usage, 3 solver failure, 4 parse failure.
int exit_code_for(ErrorCategory category);

}  // namespace crashsuite
