#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pflin {

/// Failure modes surfaced by the library. Each code maps to exactly one
/// documented failure (see README "Error codes").
enum class ErrorCode {
  ParseError,
  ValidationError,
  SingularSystem,
  SingularY,
  ZeroNoLoadVoltage,
  PvUnsupportedInGeneral,
  LossyNetwork,
  SlackNotUnity,
  Theorem1ConditionsViolated,
  SingularPhi,
  SingularB,
  NonZipBusPresent,
  SingularG,
  NonzeroCurrentLoad,
  SingularJacobian,
  NominalMismatch,
  InternalConsistency,
};

/// Upper-snake identifier printed by the CLI, e.g. "SINGULAR_Y".
std::string_view error_code_name(ErrorCode code);

/// Whether the code belongs to input validation (CLI exit 2) rather than
/// a solver failure (CLI exit 3).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a NetworkCase or case file breaks one or more invariants.
/// Carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace pflin
