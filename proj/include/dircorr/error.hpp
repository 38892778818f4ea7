#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dircorr {

enum class ErrorKind {
  InvalidArgument,
  ZeroTotal,
  ShapeMismatch,
  DegenerateVariable,
  SingularDenominator,
  SingleCategory,
  ExplosionGuard,
  MeasureFailure,
  MissingColumn,
  EmptyAfterFiltering,
  UnknownCategory,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` lets callers
// (the CLI in particular) map them onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dircorr
