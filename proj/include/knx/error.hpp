#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace knx {

enum class ErrorKind {
  InvalidParameter,
  Schema,
  ZeroVector,
  DegreeOverflow,
  CapExceeded,
  InternalInconsistency,
  SliceSubtractionFailure,
  NonabelianUnsupported,
  UnsupportedMode,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace knx
