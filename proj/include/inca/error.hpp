#pragma once

#include <stdexcept>
#include <string>

namespace inca {

enum class Errc {
  MixedFields,
  DivisionByZero,
  InfiniteField,
  DuplicateElement,
  UnknownElement,
  CycleDetected,
  NotComparable,
  EmptyPoset,
  WouldBeEmpty,
  MixedAlgebras,
  NotInvertible,
  NotPrimitive,
  Singular,
  DimensionMismatch,
  CocycleViolation,
  ZeroValue,
  TooLargeForExhaustive,
  NotConnected,
  NoPreserver,
  BadOptions,
  NotAutomorphism,
  TooLarge,
  BadFile,
  UsageError,
};

const char* errc_name(Errc c);

/// Domain error carrying a stable machine-readable code.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace inca
