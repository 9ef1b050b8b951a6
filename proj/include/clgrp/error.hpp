#pragma once

#include <stdexcept>
#include <string>

namespace clgrp {

enum class ErrorCode {
  NonMonic,
  Reducible,
  BasisNotUnimodularScaling,
  PrecisionExhausted,
  IndexDivisor,
  EmptyFactorBase,
  RankDeficient,
  DeterminantTooLarge,
  DimensionCap,
  AlphaOrder,
  DomainTooSmall,
  DegreeOne,
  Stalled,
  ZeroVolume,
  InputError,
};

const char* to_string(ErrorCode code);

/// Every recoverable failure in the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clgrp
