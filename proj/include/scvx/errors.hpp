#pragma once

#include <stdexcept>
#include <string>

namespace scvx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SCVX_DEFINE_ERROR(Name)                         \
    struct Name : Error {                               \
        using Error::Error;                             \
    }

SCVX_DEFINE_ERROR(ValidationError);
SCVX_DEFINE_ERROR(UnknownAtom);
SCVX_DEFINE_ERROR(NotMeasurable);
SCVX_DEFINE_ERROR(SpaceMismatch);
SCVX_DEFINE_ERROR(NoFamily);
SCVX_DEFINE_ERROR(NoBarycenter);
SCVX_DEFINE_ERROR(NotWeaklyAveraging);
SCVX_DEFINE_ERROR(NotAdditive);
SCVX_DEFINE_ERROR(NotDeterministic);
SCVX_DEFINE_ERROR(Inconsistent);
SCVX_DEFINE_ERROR(NotMonotone);
SCVX_DEFINE_ERROR(Unsupported);
SCVX_DEFINE_ERROR(GridMiss);
SCVX_DEFINE_ERROR(OutOfRange);

#undef SCVX_DEFINE_ERROR

}  // namespace scvx
