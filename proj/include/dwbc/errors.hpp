#pragma once

#include <stdexcept>
#include <string>

namespace dwbc {

// Error taxonomy. The CLI maps these to exit codes:
//   usage / parse / validation errors -> 2
//   degenerate parameters             -> 3
//   verification failure              -> 1
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateRapidities : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonSquare : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DuplicateInversion : Error { using Error::Error; };
struct NotConserving : Error { using Error::Error; };
struct RemovalMismatch : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };
struct ZeroPartition : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

}  // namespace dwbc
