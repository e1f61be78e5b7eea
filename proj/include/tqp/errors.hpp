#pragma once

#include <stdexcept>
#include <string>

namespace tqp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LevelOutOfRange : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct MissingSymbol : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct BoundaryMismatch : Error { using Error::Error; };
struct EmptyType : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotAQubitSector : Error { using Error::Error; };
struct SeedTooCoarse : Error { using Error::Error; };

// Raised when a model file cannot be read or does not match the schema.
struct ModelIoError : Error { using Error::Error; };

// Raised when an imported model fails pentagon/hexagon/unitarity checks.
struct ConsistencyError : Error { using Error::Error; };

} // namespace tqp
