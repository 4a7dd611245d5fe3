#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fewer than 3 extreme points: the input set has no 2-dimensional hull.
struct DegenerateHull : Error {
    using Error::Error;
};

/// Depth parameter outside its domain (d < 1, or a non-depth-1 base).
struct InvalidDepth : Error {
    using Error::Error;
};

/// Normalization strategy cannot be applied to the given domain.
struct NormalizationNotApplicable : Error {
    using Error::Error;
};

/// Weight component of the patch vanished at an evaluation point.
struct ZeroWeight : Error {
    using Error::Error;
};

/// First fundamental form is singular at the requested point.
struct DegenerateMetric : Error {
    using Error::Error;
};

/// Inner-point system is numerically singular.
struct SingularSystem : Error {
    using Error::Error;
};

/// Document failed schema or consistency validation.
struct ValidationError : Error {
    using Error::Error;
};

/// Filesystem-level failure (open/read/write).
struct IoError : Error {
    using Error::Error;
};

}  // namespace toric
