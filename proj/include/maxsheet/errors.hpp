#pragma once

#include <stdexcept>
#include <string>

namespace maxsheet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// initial data validation
struct NotImmersed : Error { using Error::Error; };
struct NotTimelike : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };

// evolution / window handling
struct DomainExceeded : Error { using Error::Error; };
struct WindowExit : Error { using Error::Error; };

// singularity / classification
struct NoSignChange : Error { using Error::Error; };
struct NotUniformlyTimelike : Error { using Error::Error; };
struct NotSingularAnchor : Error { using Error::Error; };
struct SingularOnPath : Error { using Error::Error; };
struct RequiresPeriodic : Error { using Error::Error; };
struct UndefinedValue : Error { using Error::Error; };

// embedding
struct MarginViolated : Error { using Error::Error; };

// gallery
struct UnknownName : Error { using Error::Error; };
struct NotC1 : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

} // namespace maxsheet
