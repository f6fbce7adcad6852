#include "ppmgm/error.hpp"

namespace ppmgm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid dimension";
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kInfeasibleOverlap: return "infeasible overlap";
    case ErrorCode::kInstanceTooLarge: return "instance too large";
    case ErrorCode::kIndexOutOfRange: return "index out of range";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kNumerical: return "numerical error";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

}  // namespace ppmgm
