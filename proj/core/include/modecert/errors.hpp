#pragma once

#include <stdexcept>
#include <string>

namespace modecert {

// Every failure that callers are expected to handle is reported through
// EngineError carrying one of these codes.  Certificate objects report
// *mathematical* FAIL verdicts through their `pass` flag instead; errors are
// reserved for inputs or internal states the engine cannot process soundly.
enum class ErrorCode {
  DivisionByZeroPoly,        // division by the zero polynomial / zero denominator
  NonRationalInput,          // operation would leave the rational domain
  InvalidIndex,              // angular indices outside the supported ranges
  UnsupportedCase,           // case key not in the catalogue
  EigenvalueMismatch,        // operator eigen-relation failed to close exactly
  TableMismatch,             // derived expression disagrees with the stored reference
  NotRegularSingular,        // local-exponent analysis at a point that is not regular singular
  DegenerateDivision,        // continued-fraction step lost more than one degree
  SignAmbiguousDenominator,  // denominator sign could not be certified on the domain
  RatioBreakdown,            // recurrence ratio hit a zero/blow-up during iteration
  NoBoundsRow,               // no stored bound data for the requested case
  NotCertified,              // export/report requested for a case that did not certify
  CertificateFailed,         // a required certificate failed where a hard error was requested
  ParseError,                // canonical-text parser rejected the input
  InternalError,             // invariant violation inside the engine
};

std::string to_string(ErrorCode code);

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorCode code, const std::string& message)
      : std::runtime_error(to_string(code) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw EngineError(code, message);
}

}  // namespace modecert
