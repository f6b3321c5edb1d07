#include <doctest.h>

#include <json.hpp>

#include "pflin/casefile.hpp"
#include "pflin/errors.hpp"
#include "pflin/pipeline.hpp"
#include "pflin/report.hpp"
#include "support/cases.hpp"

using namespace pflin;
using namespace pflin::testing;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InternalConsistency;
}

RunReport run(const NetworkCase& c, MethodChoice m, bool oracle = false) {
  RunOptions o;
  o.method = m;
  o.with_oracle = oracle;
  return run_pipeline(c, o);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

NetworkCase lossless_pv_case() {
  std::mt19937_64 rng(81);
  NetworkCase c;
  do {
    c = random_lossless(rng, 8, {.with_current = false, .with_shunts = false, .pv_fraction = 0.4});
  } while (!has_pv_buses(c));
  return c;
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {MethodChoice::Auto, MethodChoice::General, MethodChoice::NoLoad, MethodChoice::Lossless,
                 MethodChoice::Dc, MethodChoice::Bolognani, MethodChoice::Decoupled}) {
    CHECK(parse_method_choice(method_choice_name(m)) == m);
  }
  CHECK_FALSE(parse_method_choice("fast").has_value());
  CHECK(parse_report_format("csv") == ReportFormat::Csv);
  CHECK_FALSE(parse_report_format("xml").has_value());
}

TEST_CASE("automatic dispatch") {
  CHECK(run(feeder10(), MethodChoice::Auto).method_resolved == "noload");
  CHECK(run(lossless_pv_case(), MethodChoice::Auto).method_resolved == "lossless");
  const auto ladder = two_node_ladder({0.0, -10.0}, {0.5, 0.0}, {}, 1.02);
  CHECK(run(ladder, MethodChoice::Auto).method_resolved == "noload");

  std::mt19937_64 rng(82);
  NetworkCase lossy_pv;
  do {
    lossy_pv = random_feeder(rng, 6, {.pv_fraction = 0.5});
  } while (!has_pv_buses(lossy_pv));
  CHECK(code_of([&] { run(lossy_pv, MethodChoice::Auto); }) == ErrorCode::PvUnsupportedInGeneral);
}

TEST_CASE("explicit methods surface precondition errors") {
  CHECK(code_of([&] { run(feeder10(), MethodChoice::Lossless); }) == ErrorCode::LossyNetwork);
  CHECK(code_of([&] { run(lossless_pv_case(), MethodChoice::NoLoad); }) == ErrorCode::NonZipBusPresent);
  CHECK(code_of([&] { run(feeder10(), MethodChoice::Bolognani); }) == ErrorCode::NonzeroCurrentLoad);
  for (auto m : {MethodChoice::General, MethodChoice::NoLoad, MethodChoice::Decoupled, MethodChoice::Dc}) {
    CHECK(run(feeder10(), m).rows.size() == 9);
  }
}

TEST_CASE("dc and lossless agree on angles") {
  const auto c = lossless_pv_case();
  const auto dc = run(c, MethodChoice::Dc);
  const auto ll = run(c, MethodChoice::Lossless);
  REQUIRE(dc.rows.size() == ll.rows.size());
  for (std::size_t k = 0; k < dc.rows.size(); ++k) {
    CHECK(std::abs(dc.rows[k].dv.imag() - ll.rows[k].dv.imag()) <= 1e-12);
    CHECK(dc.rows[k].dv.real() == 0.0);
  }
}

TEST_CASE("oracle columns") {
  const auto r = run(feeder10(), MethodChoice::Auto, true);
  CHECK(r.has_oracle);
  for (const auto& row : r.rows) {
    REQUIRE(row.v_oracle.has_value());
    REQUIRE(row.abs_err.has_value());
    CHECK(*row.abs_err == doctest::Approx(std::abs(*row.v_oracle - row.v_nom - row.dv)));
  }
  const auto* conv = r.find("oracle_converged");
  REQUIRE(conv != nullptr);
  CHECK(std::get<bool>(*conv));
  const std::string csv = emit_report(r, ReportFormat::Csv);
  CHECK(csv.substr(0, csv.find('\n')) == std::string(kCsvHeader) + std::string(kCsvOracleColumns));
}

TEST_CASE("report format stability") {
  const auto c = feeder10();
  const auto a = run(c, MethodChoice::Auto);
  const auto b = run(parse_case(emit_case(c)), MethodChoice::Auto);
  for (auto f : {ReportFormat::Table, ReportFormat::Csv, ReportFormat::Json}) {
    CHECK(emit_report(a, f) == emit_report(b, f));
  }

  const std::string csv = emit_report(a, ReportFormat::Csv);
  const auto lines = split(csv, '\n');
  CHECK(lines[0] == "bus,v_nom_re,v_nom_im,dv_re,dv_im,vmag,theta_deg,p_hot,q_hot");
  CHECK(lines.size() == 10);

  // JSON numbers re-parse to the same values as the CSV text.
  const auto doc = nlohmann::json::parse(emit_report(a, ReportFormat::Json));
  CHECK(doc["method_resolved"] == "noload");
  const auto header = split(lines[0], ',');
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    const auto cells = split(lines[k + 1], ',');
    const auto& row = doc["buses"][k];
    for (std::size_t col = 0; col < header.size(); ++col) {
      CHECK(row[header[col]].get<double>() == std::strtod(cells[col].c_str(), nullptr));
    }
    CHECK(row["vmag"].get<double>() == doctest::Approx(a.rows[k].vmag).epsilon(1e-11));
    CHECK(row["dv_re"].get<double>() == doctest::Approx(a.rows[k].dv.real()).epsilon(1e-11));
  }
  for (const auto& e : a.summary) {
    if (const auto* d = std::get_if<double>(&e.value)) {
      CHECK(doc["summary"][e.key].get<double>() == doctest::Approx(*d).epsilon(1e-11));
    }
  }
}

TEST_CASE("summary diagnostics") {
  const auto r = run(feeder10(), MethodChoice::NoLoad);
  for (const char* key : {"lemma1_verdict", "s_hot_norm", "s_hot_bound", "s_hot_bound_holds", "rcond"}) {
    CHECK(r.find(key) != nullptr);
  }
  CHECK(std::get<bool>(*r.find("s_hot_bound_holds")));
  CHECK(r.find("time_solve_ms") == nullptr);

  const auto ll = run(lossless_pv_case(), MethodChoice::Lossless);
  CHECK(std::get<bool>(*ll.find("theorem1_overall")));
  CHECK(std::get<bool>(*ll.find("q_hot_bound_holds")));
  CHECK(std::get<double>(*ll.find("p_hot_norm")) <= 1e-10);

  const auto chk = run_check(feeder10());
  CHECK(chk.rows.empty());
  CHECK(chk.find("lemma1_verdict") != nullptr);
}

TEST_CASE("compare sweep") {
  RunOptions o;
  const auto cmp = run_compare(feeder10(), o, {1.0, 0.5, 0.25, 0.125});
  REQUIRE(cmp.rows.size() == 4);
  CHECK(cmp.method_resolved == "noload");
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& row = cmp.rows[k];
    CHECK(row.oracle_converged);
    CHECK(row.err_over_alpha2 == doctest::Approx(row.err_norm / (row.alpha * row.alpha)));
    CHECK(row.s_hot_norm <= row.s_hot_bound + 1e-12);
  }
  const std::string csv = emit_compare(cmp, ReportFormat::Csv);
  CHECK(csv.substr(0, csv.find('\n')) == kCompareCsvHeader);
  CHECK(emit_compare(cmp, ReportFormat::Json) == emit_compare(run_compare(feeder10(), o, {1.0, 0.5, 0.25, 0.125}), ReportFormat::Json));
}
