#include "pflin/casefile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pflin/errors.hpp"

namespace pflin {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct LineCol {
  std::size_t line = 1;
  std::size_t column = 1;
};

LineCol locate(std::string_view text, std::size_t byte) {
  LineCol lc;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

double number_field(const Json& obj, const char* key, const std::string& where, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) parse_fail(where + "." + key, "expected a number");
  return it->get<double>();
}

int integer_field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where + "." + key, "missing required field");
  if (!it->is_number_integer()) parse_fail(where + "." + key, "expected an integer");
  return it->get<int>();
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where,
                std::vector<std::string>& errs) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) errs.push_back(where + ": field '" + it.key() + "' not allowed");
  }
}

Bus parse_bus(const Json& j, const std::string& where, std::vector<std::string>& errs) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  Bus b;
  b.id = integer_field(j, "id", where);
  auto kind = j.find("kind");
  if (kind == j.end()) parse_fail(where + ".kind", "missing required field");
  if (!kind->is_string()) parse_fail(where + ".kind", "expected a string");
  const std::string k = kind->get<std::string>();

  const double shunt_g = number_field(j, "shunt_g", where, 0.0);
  const double shunt_b = number_field(j, "shunt_b", where, 0.0);
  const double i_re = number_field(j, "i_load_re", where, 0.0);
  const double i_im = number_field(j, "i_load_im", where, 0.0);
  const double p = number_field(j, "p", where, 0.0);
  const double q = number_field(j, "q", where, 0.0);
  const double vset = number_field(j, "v_setpoint", where, std::nan(""));
  const double theta = number_field(j, "theta_deg", where, 0.0);
  b.zip.shunt_admittance = {shunt_g, shunt_b};

  if (k == "slack") {
    check_keys(j, {"id", "kind", "v_setpoint", "theta_deg", "shunt_g", "shunt_b"}, where, errs);
    b.kind = BusKind::Slack;
    if (std::isnan(vset)) errs.push_back(where + ": slack bus requires v_setpoint");
    b.slack = SlackSetpoint{vset, deg_to_rad(theta)};
  } else if (k == "pv") {
    check_keys(j, {"id", "kind", "v_setpoint", "p", "shunt_g", "shunt_b", "i_load_re", "i_load_im"}, where,
               errs);
    b.kind = BusKind::PV;
    if (std::isnan(vset)) errs.push_back(where + ": pv bus requires v_setpoint");
    b.pv = PvSetpoint{p, vset};
    b.zip.current = {i_re, i_im};
  } else if (k == "zip") {
    check_keys(j, {"id", "kind", "p", "q", "shunt_g", "shunt_b", "i_load_re", "i_load_im"}, where, errs);
    b.kind = BusKind::ZIP;
    b.zip.current = {i_re, i_im};
    b.zip.power = {p, q};
  } else {
    errs.push_back(where + ": unknown bus kind '" + k + "'");
  }
  return b;
}

Branch parse_branch(const Json& j, const std::string& where, std::vector<std::string>& errs) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  check_keys(j, {"from", "to", "series_g", "series_b", "shunt_b_total", "shunt_g_total"}, where, errs);
  Branch br;
  br.from = integer_field(j, "from", where);
  br.to = integer_field(j, "to", where);
  br.series_admittance = {number_field(j, "series_g", where, 0.0), number_field(j, "series_b", where, 0.0)};
  br.shunt_admittance_total = {number_field(j, "shunt_g_total", where, 0.0),
                               number_field(j, "shunt_b_total", where, 0.0)};
  return br;
}

// Degrees value whose conversion back reproduces `rad` exactly, when one
// exists within a few ulps of the naive conversion.
double degrees_for(double rad) {
  const double naive = rad_to_deg(rad);
  double lo = naive;
  double hi = naive;
  for (int step = 0; step <= 8; ++step) {
    if (deg_to_rad(lo) == rad) return lo;
    if (deg_to_rad(hi) == rad) return hi;
    lo = std::nextafter(lo, -INFINITY);
    hi = std::nextafter(hi, INFINITY);
  }
  return naive;
}

void put_if_nonzero(OrderedJson& obj, const char* key, double v) {
  if (v != 0.0) obj[key] = v;
}

}  // namespace

NetworkCase parse_case(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto lc = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    parse_fail("line " + std::to_string(lc.line) + ", column " + std::to_string(lc.column),
               "malformed JSON");
  }
  if (!doc.is_object()) parse_fail("document", "expected an object at top level");

  std::vector<std::string> errs;
  check_keys(doc, {"schema_version", "base_mva", "buses", "branches"}, "document", errs);

  auto version = doc.find("schema_version");
  if (version == doc.end()) {
    errs.push_back("document: missing schema_version");
  } else if (!version->is_string()) {
    parse_fail("schema_version", "expected a string");
  } else if (version->get<std::string>() != kCaseSchemaVersion) {
    errs.push_back("document: unsupported schema_version '" + version->get<std::string>() + "'");
  }

  NetworkCase c;
  c.base_mva = number_field(doc, "base_mva", "document", 100.0);

  auto buses = doc.find("buses");
  if (buses == doc.end()) parse_fail("buses", "missing required field");
  if (!buses->is_array()) parse_fail("buses", "expected an array");
  for (std::size_t i = 0; i < buses->size(); ++i) {
    c.buses.push_back(parse_bus((*buses)[i], "buses[" + std::to_string(i) + "]", errs));
  }
  std::stable_sort(c.buses.begin(), c.buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });

  auto branches = doc.find("branches");
  if (branches == doc.end()) parse_fail("branches", "missing required field");
  if (!branches->is_array()) parse_fail("branches", "expected an array");
  for (std::size_t i = 0; i < branches->size(); ++i) {
    c.branches.push_back(parse_branch((*branches)[i], "branches[" + std::to_string(i) + "]", errs));
  }

  for (auto& e : validate(c)) errs.push_back(std::move(e));
  if (!errs.empty()) throw ValidationError(std::move(errs));
  return c;
}

NetworkCase parse_case_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_case(buf.str());
}

std::string emit_case(const NetworkCase& c) {
  OrderedJson doc;
  doc["schema_version"] = std::string(kCaseSchemaVersion);
  doc["base_mva"] = c.base_mva;
  OrderedJson buses = OrderedJson::array();
  for (const Bus& b : c.buses) {
    OrderedJson j;
    j["id"] = b.id;
    switch (b.kind) {
      case BusKind::Slack:
        j["kind"] = "slack";
        j["v_setpoint"] = b.slack->vmag;
        put_if_nonzero(j, "theta_deg", degrees_for(b.slack->angle));
        break;
      case BusKind::PV:
        j["kind"] = "pv";
        j["v_setpoint"] = b.pv->vmag;
        put_if_nonzero(j, "p", b.pv->p);
        break;
      case BusKind::ZIP:
        j["kind"] = "zip";
        put_if_nonzero(j, "p", b.zip.power.real());
        put_if_nonzero(j, "q", b.zip.power.imag());
        break;
    }
    put_if_nonzero(j, "shunt_g", b.zip.shunt_admittance.real());
    put_if_nonzero(j, "shunt_b", b.zip.shunt_admittance.imag());
    if (b.kind != BusKind::Slack) {
      put_if_nonzero(j, "i_load_re", b.zip.current.real());
      put_if_nonzero(j, "i_load_im", b.zip.current.imag());
    }
    buses.push_back(std::move(j));
  }
  doc["buses"] = std::move(buses);

  OrderedJson branches = OrderedJson::array();
  for (const Branch& br : c.branches) {
    OrderedJson j;
    j["from"] = br.from;
    j["to"] = br.to;
    j["series_g"] = br.series_admittance.real();
    j["series_b"] = br.series_admittance.imag();
    put_if_nonzero(j, "shunt_b_total", br.shunt_admittance_total.imag());
    put_if_nonzero(j, "shunt_g_total", br.shunt_admittance_total.real());
    branches.push_back(std::move(j));
  }
  doc["branches"] = std::move(branches);
  return doc.dump(2) + "\n";
}

}  // namespace pflin
