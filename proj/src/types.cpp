#include "crashsuite/types.hpp"

#include "crashsuite/error.hpp"
#include "crashsuite/parameterization.hpp"

namespace crashsuite {

ProblemId problem_from_int(int code)
{
    if (code < 1 || code > 3)
        throw Error(ErrorKind::InvalidArgument, "problem must be 1, 2 or 3, got " + std::to_string(code));
    return static_cast<ProblemId>(code);
}

std::string_view to_string(ProblemId id)
{
    switch (id) {
    case ProblemId::StarBox: return "StarBox";
    case ProblemId::ThreePointBending: return "ThreePointBending";
    case ProblemId::LongCrashTube: return "LongCrashTube";
    }
    return "Unknown";
}

int max_dimension(ProblemId id)
{
    switch (id) {
    case ProblemId::StarBox: return kStarBoxMaxDim;
    case ProblemId::ThreePointBending: return kBeamMaxDim;
    case ProblemId::LongCrashTube: return kTubeMaxDim;
    }
    return 0;
}

}  // namespace crashsuite
