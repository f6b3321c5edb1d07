#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pflin/pipeline.hpp"

namespace pflin {

enum class ReportFormat { Table, Csv, Json };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// Fixed per-bus CSV header; the oracle columns appear only when present.
inline constexpr std::string_view kCsvHeader = "bus,v_nom_re,v_nom_im,dv_re,dv_im,vmag,theta_deg,p_hot,q_hot";
inline constexpr std::string_view kCsvOracleColumns = ",v_oracle_re,v_oracle_im,abs_err";
inline constexpr std::string_view kCompareCsvHeader =
    "alpha,err_norm,err_over_alpha2,s_hot_norm,s_hot_bound,oracle_converged,oracle_iterations";

/// Deterministic rendering; csv and json numbers carry 12 significant digits.
std::string emit_report(const RunReport& report, ReportFormat format);
std::string emit_compare(const CompareReport& report, ReportFormat format);

}  // namespace pflin
