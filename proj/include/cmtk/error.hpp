#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmtk {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  NegativeEigenvalue,
  ShapeError,
  BadExponent,
  BadLabel,
  BadDimension,
  BadIndex,
  BadK,
  BadSplit,
  NotSubunitary,
  NotPSD,
  GramViolation,
  Skipped,
  UnknownFamily,
  BadInput,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the toolkit is reported through this one exception type;
// callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cmtk
