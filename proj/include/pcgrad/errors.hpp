#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcgrad {

enum class ErrorKind {
  OrderTooSmall,
  NonPositiveEntry,
  ReciprocityViolation,
  BadDiagonal,
  NonPositiveWeight,
  InvalidExponent,
  ZeroWithNegativeExponent,
  IndicatorUndefined,
  NonSmoothExponent,
  OnConsistentLocus,
  DegenerateDefect,
  PositivityFailure,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class PcError : public std::runtime_error {
 public:
  PcError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pcgrad
