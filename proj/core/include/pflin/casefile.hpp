#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pflin/netmodel.hpp"

namespace pflin {

/// Current case-file schema version.
inline constexpr std::string_view kCaseSchemaVersion = "1";

/// Parses a JSON case document. Syntax and type problems raise PARSE_ERROR
/// (with line/column or field path); schema and network problems raise
/// VALIDATION_ERROR listing every violation found.
NetworkCase parse_case(std::string_view text);
NetworkCase parse_case_file(const std::filesystem::path& path);

/// Serializes a case so that `parse_case(emit_case(c)) == c`.
std::string emit_case(const NetworkCase& c);

}  // namespace pflin
