#include "pflin/netmodel.hpp"

#include <cmath>
#include <numeric>
#include <algorithm>

#include "pflin/errors.hpp"

namespace pflin {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string bus_label(const Bus& b) { return "bus " + std::to_string(b.id); }

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<std::string> validate(const NetworkCase& c) {
  std::vector<std::string> errs;
  const int n_total = static_cast<int>(c.buses.size());

  if (!(c.base_mva > 0.0) || !std::isfinite(c.base_mva)) errs.push_back("base_mva must be positive");
  if (n_total < 2) {
    errs.push_back("case needs at least one slack and one non-slack bus");
    return errs;
  }

  int slack_count = 0;
  for (int k = 0; k < n_total; ++k) {
    const Bus& b = c.buses[k];
    if (b.id != k + 1) {
      errs.push_back("bus ids must be contiguous 1..N+1 in order; position " + std::to_string(k + 1) +
                     " holds id " + std::to_string(b.id));
    }
    if (!finite(b.zip.shunt_admittance) || !finite(b.zip.current) || !finite(b.zip.power)) {
      errs.push_back(bus_label(b) + ": non-finite ZIP component");
    }
    switch (b.kind) {
      case BusKind::Slack:
        ++slack_count;
        if (!b.slack) errs.push_back(bus_label(b) + ": slack bus needs a voltage setpoint");
        if (b.pv) errs.push_back(bus_label(b) + ": slack bus cannot carry a PV setpoint");
        if (b.slack && (!(b.slack->vmag > 0.0) || !std::isfinite(b.slack->vmag) ||
                        !std::isfinite(b.slack->angle))) {
          errs.push_back(bus_label(b) + ": slack voltage magnitude must be positive and finite");
        }
        if (k != n_total - 1) errs.push_back(bus_label(b) + ": slack bus must have the last id (N+1)");
        if (b.zip.current != Complex{} || b.zip.power != Complex{}) {
          errs.push_back(bus_label(b) + ": slack bus cannot carry load current or constant power");
        }
        break;
      case BusKind::PV:
        if (!b.pv) errs.push_back(bus_label(b) + ": PV bus needs P and |V| setpoints");
        if (b.slack) errs.push_back(bus_label(b) + ": PV bus cannot carry a slack setpoint");
        if (b.pv && (!(b.pv->vmag > 0.0) || !std::isfinite(b.pv->vmag) || !std::isfinite(b.pv->p))) {
          errs.push_back(bus_label(b) + ": PV |V| setpoint must be positive and finite");
        }
        if (b.zip.power != Complex{}) {
          errs.push_back(bus_label(b) + ": PV bus active power belongs in the PV setpoint");
        }
        break;
      case BusKind::ZIP:
        if (b.pv || b.slack) errs.push_back(bus_label(b) + ": ZIP bus cannot carry setpoints");
        break;
    }
  }
  if (slack_count != 1) {
    errs.push_back("exactly one slack bus required, found " + std::to_string(slack_count));
  }

  UnionFind uf(n_total);
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    const Branch& br = c.branches[i];
    const std::string label = "branch " + std::to_string(i + 1);
    const bool from_ok = br.from >= 1 && br.from <= n_total;
    const bool to_ok = br.to >= 1 && br.to <= n_total;
    if (!from_ok || !to_ok) {
      errs.push_back(label + ": references unknown bus");
      continue;
    }
    if (br.from == br.to) errs.push_back(label + ": from and to are the same bus");
    if (!finite(br.series_admittance) || !finite(br.shunt_admittance_total)) {
      errs.push_back(label + ": non-finite admittance");
    }
    if (br.series_admittance == Complex{}) errs.push_back(label + ": series admittance is zero");
    uf.unite(br.from - 1, br.to - 1);
  }
  const int root = uf.find(0);
  for (int k = 1; k < n_total; ++k) {
    if (uf.find(k) != root) {
      errs.push_back("network graph is disconnected");
      break;
    }
  }
  return errs;
}

void require_valid(const NetworkCase& c) {
  auto errs = validate(c);
  if (!errs.empty()) throw ValidationError(std::move(errs));
}

const Bus& slack_bus(const NetworkCase& c) { return c.buses.back(); }

Complex slack_voltage(const NetworkCase& c) {
  const auto& s = slack_bus(c).slack.value();
  return std::polar(s.vmag, s.angle);
}

CVector load_currents(const NetworkCase& c) {
  const int n = non_slack_count(c);
  CVector out(n);
  for (int k = 0; k < n; ++k) out(k) = c.buses[k].zip.current;
  return out;
}

CVector target_injections(const NetworkCase& c) {
  const int n = non_slack_count(c);
  CVector out(n);
  for (int k = 0; k < n; ++k) {
    const Bus& b = c.buses[k];
    out(k) = b.kind == BusKind::PV ? Complex{b.pv->p, 0.0} : b.zip.power;
  }
  return out;
}

bool has_pv_buses(const NetworkCase& c) {
  for (const auto& b : c.buses) {
    if (b.kind == BusKind::PV) return true;
  }
  return false;
}

NetworkCase scale_injections(const NetworkCase& c, double alpha) {
  NetworkCase out = c;
  for (auto& b : out.buses) {
    b.zip.power *= alpha;
    if (b.pv) b.pv->p *= alpha;
  }
  return out;
}

CMatrix AdmittancePartition::full() const {
  const int n = size();
  CMatrix f(n + 1, n + 1);
  f.topLeftCorner(n, n) = Y;
  f.topRightCorner(n, 1) = Ybar;
  f.bottomLeftCorner(1, n) = Ybar.transpose();
  f(n, n) = y_slack;
  return f;
}

AdmittancePartition build_admittance(const NetworkCase& c) {
  require_valid(c);
  const int n_total = static_cast<int>(c.buses.size());
  CMatrix full = CMatrix::Zero(n_total, n_total);

  for (const Branch& br : c.branches) {
    const int a = br.from - 1;
    const int b = br.to - 1;
    const Complex half_shunt = 0.5 * br.shunt_admittance_total;
    full(a, a) += br.series_admittance + half_shunt;
    full(b, b) += br.series_admittance + half_shunt;
    full(a, b) -= br.series_admittance;
    full(b, a) -= br.series_admittance;
  }
  for (int k = 0; k < n_total; ++k) full(k, k) += c.buses[k].zip.shunt_admittance;

  const int n = n_total - 1;
  AdmittancePartition p;
  p.Y = full.topLeftCorner(n, n);
  p.Ybar = full.topRightCorner(n, 1);
  p.y_slack = full(n, n);
  p.Ysh = extract_shunts(p);
  return p;
}

CVector extract_shunts(const AdmittancePartition& p) {
  return p.Y * CVector::Ones(p.size()) + p.Ybar;
}

std::vector<int> slack_adjacent_buses(const AdmittancePartition& p) {
  std::vector<int> out;
  for (int k = 0; k < p.size(); ++k) {
    if (p.Ybar(k) != Complex{}) out.push_back(k);
  }
  return out;
}

bool y_graph_connected(const AdmittancePartition& p) {
  const int n = p.size();
  if (n == 0) return false;
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (p.Y(i, j) != Complex{} || p.Y(j, i) != Complex{}) uf.unite(i, j);
    }
  }
  const int root = uf.find(0);
  for (int k = 1; k < n; ++k) {
    if (uf.find(k) != root) return false;
  }
  return true;
}

std::string_view structure_reason_name(StructureReason r) {
  switch (r) {
    case StructureReason::YGraphDisconnected: return "Y_GRAPH_DISCONNECTED";
    case StructureReason::NotDiagonallyDominant: return "NOT_DIAGONALLY_DOMINANT";
    case StructureReason::NotStrictAtSlackAdjacent: return "NOT_STRICT_AT_SLACK_ADJACENT";
    case StructureReason::NoLoadVoltageZero: return "NO_LOAD_VOLTAGE_ZERO";
  }
  return "UNKNOWN";
}

StructureDiagnosis check_lemma1_structure(const AdmittancePartition& p, const CVector& load_current,
                                          Complex v_slack) {
  // Relative slack on the comparisons; equality rows are common (equal R/X
  // ratios) and must not flip on rounding.
  constexpr double kRel = 1e-12;
  StructureDiagnosis d;
  const int n = p.size();
  d.connected = y_graph_connected(p);
  d.slack_adjacent = slack_adjacent_buses(p);

  std::vector<double> margin(static_cast<std::size_t>(n));
  std::vector<double> scale(static_cast<std::size_t>(n));
  d.weakly_dominant = true;
  for (int l = 0; l < n; ++l) {
    double off = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m != l) off += std::abs(p.Y(l, m));
    }
    const double diag = std::abs(p.Y(l, l));
    margin[l] = diag - off;
    scale[l] = std::max(diag, off);
    if (margin[l] < -kRel * scale[l]) {
      d.weakly_dominant = false;
      d.weak_violations.push_back(l);
    }
  }
  d.strict_at_slack_adjacent = !d.slack_adjacent.empty();
  for (int l : d.slack_adjacent) {
    if (!(margin[l] > kRel * scale[l])) d.strict_at_slack_adjacent = false;
  }

  d.noload_nonzero = (load_current - p.Ybar * v_slack).norm() > 1e-12;

  if (!d.connected) d.reasons.push_back(StructureReason::YGraphDisconnected);
  if (!d.weakly_dominant) d.reasons.push_back(StructureReason::NotDiagonallyDominant);
  if (!d.strict_at_slack_adjacent) d.reasons.push_back(StructureReason::NotStrictAtSlackAdjacent);
  if (!d.noload_nonzero) d.reasons.push_back(StructureReason::NoLoadVoltageZero);
  d.verdict = d.reasons.empty();
  return d;
}

}  // namespace pflin
