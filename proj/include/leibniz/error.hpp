#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

enum class ErrorCode {
  Parse,
  DenominatorVanishes,
  NonInvertibleDenominator,
  NonRealValue,
  DimensionMismatch,
  Schema,
  UnknownAlgebra,
  UnboundParameter,
  RefusedSize,
  Io,
  Usage,
};

const char *error_code_name(ErrorCode code);

// All failures inside the library surface as this exception; the C API
// translates the code into an lz_status.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace leibniz
