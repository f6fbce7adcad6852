#pragma once

#include <stdexcept>
#include <string>

namespace ppmgm {

enum class ErrorCode {
  kInvalidDimension,
  kInvalidParameter,
  kInvalidInput,
  kInfeasibleOverlap,
  kInstanceTooLarge,
  kIndexOutOfRange,
  kDomain,
  kNumerical,
  kConfig,
  kIo,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// C layer can map it onto a status value without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppmgm
