#include "pflin/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace pflin {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Value as printed with 12 significant digits, so json and csv agree.
OrderedJson json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  const double r = std::strtod(num(v).c_str(), nullptr);
  if (r == std::trunc(r) && std::abs(r) < 1e15) return static_cast<std::int64_t>(r);
  return r;
}

std::string value_text(const SummaryValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return num(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

OrderedJson value_json(const SummaryValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return json_num(*d);
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string table_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string render_table(const RunReport& r) {
  std::string out = "method: " + r.method_requested + " -> " + r.method_resolved + "\n";
  if (!r.rows.empty()) {
    std::vector<std::string> head = {"bus", "v_nom_re", "v_nom_im", "dv_re", "dv_im", "vmag", "theta_deg",
                                     "p_hot", "q_hot"};
    if (r.has_oracle) {
      for (const char* h : {"v_oracle_re", "v_oracle_im", "abs_err"}) head.emplace_back(h);
    }
    constexpr std::size_t w = 13;
    for (const auto& h : head) out += pad(h, w);
    out += '\n';
    for (const auto& row : r.rows) {
      out += pad(std::to_string(row.bus), w);
      for (double v : {row.v_nom.real(), row.v_nom.imag(), row.dv.real(), row.dv.imag(), row.vmag, row.theta_deg,
                       row.p_hot, row.q_hot}) {
        out += pad(table_num(v), w);
      }
      if (r.has_oracle) {
        out += pad(table_num(row.v_oracle->real()), w);
        out += pad(table_num(row.v_oracle->imag()), w);
        out += pad(table_num(*row.abs_err), w);
      }
      out += '\n';
    }
  }
  out += "summary:\n";
  for (const auto& e : r.summary) out += "  " + e.key + " = " + value_text(e.value) + "\n";
  return out;
}

std::string render_csv(const RunReport& r) {
  std::string out(kCsvHeader);
  if (r.has_oracle) out += kCsvOracleColumns;
  out += '\n';
  for (const auto& row : r.rows) {
    out += std::to_string(row.bus);
    for (double v : {row.v_nom.real(), row.v_nom.imag(), row.dv.real(), row.dv.imag(), row.vmag, row.theta_deg,
                     row.p_hot, row.q_hot}) {
      out += ',' + num(v);
    }
    if (r.has_oracle) {
      out += ',' + num(row.v_oracle->real()) + ',' + num(row.v_oracle->imag()) + ',' + num(*row.abs_err);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const RunReport& r) {
  OrderedJson doc;
  doc["method_requested"] = r.method_requested;
  doc["method_resolved"] = r.method_resolved;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : r.rows) {
    OrderedJson j;
    j["bus"] = row.bus;
    j["v_nom_re"] = json_num(row.v_nom.real());
    j["v_nom_im"] = json_num(row.v_nom.imag());
    j["dv_re"] = json_num(row.dv.real());
    j["dv_im"] = json_num(row.dv.imag());
    j["vmag"] = json_num(row.vmag);
    j["theta_deg"] = json_num(row.theta_deg);
    j["p_hot"] = json_num(row.p_hot);
    j["q_hot"] = json_num(row.q_hot);
    if (r.has_oracle) {
      j["v_oracle_re"] = json_num(row.v_oracle->real());
      j["v_oracle_im"] = json_num(row.v_oracle->imag());
      j["abs_err"] = json_num(*row.abs_err);
    }
    rows.push_back(std::move(j));
  }
  doc["buses"] = std::move(rows);
  OrderedJson summary = OrderedJson::object();
  for (const auto& e : r.summary) summary[e.key] = value_json(e.value);
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return render_table(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Json: return render_json(report);
  }
  return {};
}

std::string emit_compare(const CompareReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      OrderedJson doc;
      doc["method_resolved"] = report.method_resolved;
      OrderedJson rows = OrderedJson::array();
      for (const auto& row : report.rows) {
        OrderedJson j;
        j["alpha"] = json_num(row.alpha);
        j["err_norm"] = json_num(row.err_norm);
        j["err_over_alpha2"] = json_num(row.err_over_alpha2);
        j["s_hot_norm"] = json_num(row.s_hot_norm);
        j["s_hot_bound"] = json_num(row.s_hot_bound);
        j["oracle_converged"] = row.oracle_converged;
        j["oracle_iterations"] = row.oracle_iterations;
        rows.push_back(std::move(j));
      }
      doc["sweep"] = std::move(rows);
      return doc.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string out(kCompareCsvHeader);
      out += '\n';
      for (const auto& row : report.rows) {
        out += num(row.alpha) + ',' + num(row.err_norm) + ',' + num(row.err_over_alpha2) + ',' +
               num(row.s_hot_norm) + ',' + num(row.s_hot_bound) + ',' + (row.oracle_converged ? "true" : "false") +
               ',' + std::to_string(row.oracle_iterations) + '\n';
      }
      return out;
    }
    case ReportFormat::Table: {
      std::string out = "method: " + report.method_resolved + "\n";
      constexpr std::size_t w = 16;
      for (const char* h : {"alpha", "err_norm", "err/alpha^2", "s_hot_norm", "s_hot_bound", "converged", "iters"}) {
        out += pad(h, w);
      }
      out += '\n';
      for (const auto& row : report.rows) {
        for (double v : {row.alpha, row.err_norm, row.err_over_alpha2, row.s_hot_norm, row.s_hot_bound}) {
          out += pad(table_num(v), w);
        }
        out += pad(row.oracle_converged ? "yes" : "no", w);
        out += pad(std::to_string(row.oracle_iterations), w);
        out += '\n';
      }
      return out;
    }
  }
  return {};
}

}  // namespace pflin
