#include "dholo/errors.hpp"

namespace dholo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularInput: return "SingularInput";
    case ErrorKind::DegenerateCycle: return "DegenerateCycle";
    case ErrorKind::DegenerateLeg: return "DegenerateLeg";
    case ErrorKind::AntipodalLeg: return "AntipodalLeg";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ZeroR: return "ZeroR";
    case ErrorKind::ZeroWeight: return "ZeroWeight";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace dholo
