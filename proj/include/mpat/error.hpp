#pragma once

#include <stdexcept>
#include <string>

namespace mpat {

// Error categories map to CLI exit codes: capacity/budget errors exit 2,
// everything else exits 1.
enum class ErrorCategory {
  Input,
  Capacity,
  Contract,
  Domain,
  Singular,
  Naming,
  Numeric,
  Statistic,
  Bracket,
  Format,
  InsufficientData,
};

inline const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Input: return "input";
    case ErrorCategory::Capacity: return "capacity";
    case ErrorCategory::Contract: return "contract";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Singular: return "singular";
    case ErrorCategory::Naming: return "naming";
    case ErrorCategory::Numeric: return "numeric";
    case ErrorCategory::Statistic: return "statistic";
    case ErrorCategory::Bracket: return "bracket";
    case ErrorCategory::Format: return "format";
    case ErrorCategory::InsufficientData: return "insufficient-data";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory c, const std::string& msg)
      : std::runtime_error(msg), cat_(c) {}
  ErrorCategory category() const noexcept { return cat_; }

 private:
  ErrorCategory cat_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace mpat
