#pragma once

#include <stdexcept>
#include <string>

namespace raddp {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, move outside its declared range,
/// out-of-scope table query, unparsable task file.
struct InputError : Error {
  using Error::Error;
};

/// N times the maximum finite stage cost reaches the value ceiling; the
/// solved table could not distinguish expensive-but-winning from losing.
struct StageCostUnbounded : Error {
  using Error::Error;
};

/// A policy extraction mode was requested that the solution cannot provide.
struct ModeUnavailable : Error {
  using Error::Error;
};

/// No obstacle-free tube exists even at zero width.
struct NotPerforated : Error {
  using Error::Error;
};

/// The brute-force oracle exceeded its node budget.
struct OracleBudgetExceeded : Error {
  using Error::Error;
};

}  // namespace raddp
