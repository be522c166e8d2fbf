#include "cmtk/error.hpp"

namespace cmtk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalueBeyondTolerance";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::BadLabel: return "BadLabel";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::NotSubunitary: return "NotSubunitary";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::GramViolation: return "GramViolation";
    case ErrorKind::Skipped: return "Skipped";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace cmtk
