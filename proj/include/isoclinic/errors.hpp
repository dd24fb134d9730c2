#pragma once

#include <stdexcept>
#include <string>

namespace isoclinic {

// Domain errors carry a stable code (NonSplitSpectrum, PrecisionUnderflow, ...)
// that the CLI reports verbatim.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isoclinic
