#pragma once

#include <string>
#include <string_view>

namespace crashsuite {

enum class ProblemId { StarBox = 1, ThreePointBending = 2, LongCrashTube = 3 };

/// Throws InvalidArgument for codes other than 1..3.
ProblemId problem_from_int(int code);
inline int to_int(ProblemId id) { return static_cast<int>(id); }

/// "StarBox", "ThreePointBending", "LongCrashTube"; also the deck case name.
std::string_view to_string(ProblemId id);

/// Largest supported dimension: 34, 40 and 30 respectively.
int max_dimension(ProblemId id);

}  // namespace crashsuite
