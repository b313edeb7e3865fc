#include "knx/error.hpp"

namespace knx {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::SliceSubtractionFailure: return "SliceSubtractionFailure";
    case ErrorKind::NonabelianUnsupported: return "NonabelianUnsupported";
    case ErrorKind::UnsupportedMode: return "UnsupportedMode";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace knx
