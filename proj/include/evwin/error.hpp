#ifndef EVWIN_ERROR_HPP_
#define EVWIN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace evwin {

enum class ErrorKind {
  FileNotFound,
  MalformedRow,
  DuplicateDate,
  EventOutsideRange,
  InsufficientData,
  ZeroMAD,
  ZeroVariance,
  ZeroL2,
  ZeroBandwidth,
  SampleSizeOutOfRange,
  EmptySample,
  DegenerateResample,
  DegenerateDeviations,
  MethodOutputMismatch,
  SolverNotConverged,
  ZeroPreVariance,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying its kind, so callers
/// (and the CLI exit-code mapping) can branch on the condition rather than on
/// message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace evwin

#endif  // EVWIN_ERROR_HPP_
