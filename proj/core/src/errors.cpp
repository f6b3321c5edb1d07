#include "pflin/errors.hpp"

namespace pflin {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::SingularY: return "SINGULAR_Y";
    case ErrorCode::ZeroNoLoadVoltage: return "ZERO_NOLOAD_VOLTAGE";
    case ErrorCode::PvUnsupportedInGeneral: return "PV_UNSUPPORTED_IN_GENERAL";
    case ErrorCode::LossyNetwork: return "LOSSY_NETWORK";
    case ErrorCode::SlackNotUnity: return "SLACK_NOT_UNITY";
    case ErrorCode::Theorem1ConditionsViolated: return "THEOREM1_CONDITIONS_VIOLATED";
    case ErrorCode::SingularPhi: return "SINGULAR_PHI";
    case ErrorCode::SingularB: return "SINGULAR_B";
    case ErrorCode::NonZipBusPresent: return "NON_ZIP_BUS_PRESENT";
    case ErrorCode::SingularG: return "SINGULAR_G";
    case ErrorCode::NonzeroCurrentLoad: return "NONZERO_CURRENT_LOAD";
    case ErrorCode::SingularJacobian: return "SINGULAR_JACOBIAN";
    case ErrorCode::NominalMismatch: return "NOMINAL_MISMATCH";
    case ErrorCode::InternalConsistency: return "INTERNAL_CONSISTENCY";
  }
  return "UNKNOWN";
}

bool is_validation_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::ValidationError;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

namespace {
std::string join_violations(const std::vector<std::string>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(ErrorCode::ValidationError, join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace pflin
