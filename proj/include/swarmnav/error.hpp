#pragma once

#include <stdexcept>
#include <string>

namespace swarmnav {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedConfig : Error { using Error::Error; };
struct InvalidScene : Error { using Error::Error; };
struct GridTooLarge : Error { using Error::Error; };
struct NoPath : Error { using Error::Error; };
struct OccupiedEndpoint : Error { using Error::Error; };
struct OutOfBounds : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct InvalidStepCount : Error { using Error::Error; };
struct UnknownClass : Error { using Error::Error; };
struct InvalidThresholds : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };

}  // namespace swarmnav
