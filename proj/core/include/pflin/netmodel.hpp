#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pflin/types.hpp"

namespace pflin {

/// 1-based bus number. In a valid case the slack bus is always N+1.
using BusId = int;

enum class BusKind { Slack, PV, ZIP };

/// Constant-impedance, constant-current and constant-power parts of a load.
/// `power` follows the injection convention: negative for consumption.
struct ZipLoad {
  Complex shunt_admittance{};
  Complex current{};
  Complex power{};

  bool operator==(const ZipLoad&) const = default;
};

struct PvSetpoint {
  double p = 0.0;
  double vmag = 1.0;

  bool operator==(const PvSetpoint&) const = default;
};

struct SlackSetpoint {
  double vmag = 1.0;
  double angle = 0.0;  // radians

  bool operator==(const SlackSetpoint&) const = default;
};

struct Bus {
  BusId id = 0;
  BusKind kind = BusKind::ZIP;
  ZipLoad zip;
  std::optional<PvSetpoint> pv;
  std::optional<SlackSetpoint> slack;

  bool operator==(const Bus&) const = default;
};

/// Pi-model branch; half of `shunt_admittance_total` is stamped at each end.
struct Branch {
  BusId from = 0;
  BusId to = 0;
  Complex series_admittance{};
  Complex shunt_admittance_total{};

  bool operator==(const Branch&) const = default;
};

/// A network with N+1 buses in per-unit. `buses[k]` has id k+1 and the last
/// entry is the slack bus once the case validates.
struct NetworkCase {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  double base_mva = 100.0;

  bool operator==(const NetworkCase&) const = default;
};

/// Every invariant violation in `c` (empty when valid).
std::vector<std::string> validate(const NetworkCase& c);

/// Throws ValidationError when `validate` reports anything.
void require_valid(const NetworkCase& c);

/// Number of non-slack buses.
inline int non_slack_count(const NetworkCase& c) { return static_cast<int>(c.buses.size()) - 1; }

const Bus& slack_bus(const NetworkCase& c);
Complex slack_voltage(const NetworkCase& c);
/// I_L over the non-slack buses.
CVector load_currents(const NetworkCase& c);
/// Target complex injections over the non-slack buses: the constant-power
/// part for ZIP buses, P + j0 for PV buses (their Q is free).
CVector target_injections(const NetworkCase& c);
bool has_pv_buses(const NetworkCase& c);
/// Copy of `c` with every constant-power injection and PV active setpoint
/// scaled by `alpha`.
NetworkCase scale_injections(const NetworkCase& c, double alpha);

/// Block form of the (N+1)x(N+1) bus admittance matrix with the slack bus
/// last: [[Y, Ybar], [Ybar^T, y_slack]].
struct AdmittancePartition {
  CMatrix Y;
  CVector Ybar;
  Complex y_slack{};
  /// Per-bus shunt admittances, Y*1 + Ybar.
  CVector Ysh;

  int size() const { return static_cast<int>(Y.rows()); }
  RMatrix G() const { return Y.real(); }
  RMatrix B() const { return Y.imag(); }
  RVector Gsh() const { return Ysh.real(); }
  RVector Bsh() const { return Ysh.imag(); }
  /// Reassembled full matrix.
  CMatrix full() const;
};

AdmittancePartition build_admittance(const NetworkCase& c);

/// Y*1_N + Ybar.
CVector extract_shunts(const AdmittancePartition& p);

/// Non-slack buses (0-based) with a nonzero coupling to the slack bus.
std::vector<int> slack_adjacent_buses(const AdmittancePartition& p);

/// Whether the graph induced by the off-diagonal pattern of `Y` is connected.
bool y_graph_connected(const AdmittancePartition& p);

enum class StructureReason {
  YGraphDisconnected,
  NotDiagonallyDominant,
  NotStrictAtSlackAdjacent,
  NoLoadVoltageZero,
};

std::string_view structure_reason_name(StructureReason r);

struct StructureDiagnosis {
  bool connected = false;
  bool weakly_dominant = false;
  bool strict_at_slack_adjacent = false;
  bool noload_nonzero = false;
  bool verdict = false;
  std::vector<int> slack_adjacent;  // 0-based
  std::vector<int> weak_violations;  // 0-based rows failing |y_ll| >= sum |y_lm|
  std::vector<StructureReason> reasons;

  bool irreducibly_dominant() const {
    return connected && weakly_dominant && strict_at_slack_adjacent;
  }
};

/// Structural conditions that make Y invertible and the no-load voltage
/// nonzero: connectivity of Y's graph with row dominance (strict at every
/// slack-adjacent bus), and I_L != Ybar * V_slack.
StructureDiagnosis check_lemma1_structure(const AdmittancePartition& p, const CVector& load_current,
                                          Complex v_slack);

}  // namespace pflin
