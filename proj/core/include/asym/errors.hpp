#pragma once

#include <stdexcept>
#include <string>

namespace asym {

/// Base class for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct SingularMatrixError : Error { using Error::Error; };
struct NoConvergenceError : Error { using Error::Error; };
struct DegenerateSpectrumError : Error { using Error::Error; };
struct MalformedOperatorError : Error { using Error::Error; };
struct TruncatedSeriesError : Error { using Error::Error; };
struct TieError : Error { using Error::Error; };
struct InsufficientDataError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace asym
