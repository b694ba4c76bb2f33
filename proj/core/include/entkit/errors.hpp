#pragma once

#include <stdexcept>
#include <string>

namespace entkit {

/// Base class for all entkit errors. what() always starts with the error
/// name so callers (and the CLI) can surface which invariant failed.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(detail.empty() ? name : name + ": " + detail) {}
};

#define ENTKIT_ERROR(Name)                                    \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& detail = std::string()) \
        : Error(#Name, detail) {}                             \
  }

ENTKIT_ERROR(DimensionMismatch);
ENTKIT_ERROR(NotNormalized);
ENTKIT_ERROR(ZeroState);
ENTKIT_ERROR(TooFewParts);
ENTKIT_ERROR(BadBipartition);
ENTKIT_ERROR(NonPositiveTolerance);
ENTKIT_ERROR(PhaseCountMismatch);
ENTKIT_ERROR(NonOrthonormalRightStates);
ENTKIT_ERROR(SizeMismatch);
ENTKIT_ERROR(NonUnitary);
ENTKIT_ERROR(NotThreeQubits);
ENTKIT_ERROR(NotMaximal);
ENTKIT_ERROR(BranchResolutionFailure);
ENTKIT_ERROR(DimensionTooLarge);
ENTKIT_ERROR(ParseError);
ENTKIT_ERROR(UnknownName);

#undef ENTKIT_ERROR

}  // namespace entkit
