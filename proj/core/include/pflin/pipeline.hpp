#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

enum class MethodChoice { Auto, General, NoLoad, Lossless, Dc, Bolognani, Decoupled };

std::string_view method_choice_name(MethodChoice m);
std::optional<MethodChoice> parse_method_choice(std::string_view name);

struct RunOptions {
  MethodChoice method = MethodChoice::Auto;
  bool with_oracle = false;
  bool override_conditions = false;
  bool with_timings = false;
};

struct BusRow {
  BusId bus = 0;
  Complex v_nom{};
  Complex dv{};
  double vmag = 0.0;
  double theta_deg = 0.0;
  double p_hot = 0.0;
  double q_hot = 0.0;
  std::optional<Complex> v_oracle;
  std::optional<double> abs_err;
};

using SummaryValue = std::variant<double, bool, std::string>;

struct SummaryEntry {
  std::string key;
  SummaryValue value;
};

/// Per-bus table plus an ordered summary. Summary keys are prefixed by the
/// check they come from (lemma1_, theorem1_, lossless_, oracle_, ...).
struct RunReport {
  std::string method_requested;
  std::string method_resolved;
  std::vector<BusRow> rows;
  std::vector<SummaryEntry> summary;
  bool has_oracle = false;

  const SummaryValue* find(std::string_view key) const;
};

/// Solves `c` with the chosen method and collects residuals, bounds and
/// condition checks. `Auto` picks lossless when the conductance gate passes,
/// V_slack = 1∠0 and the dominance conditions hold; otherwise the no-load
/// closed form for all-ZIP networks whose no-load voltage exists; otherwise
/// the general 2N system around a flat nominal.
RunReport run_pipeline(const NetworkCase& c, const RunOptions& options);

/// Only the structural diagnostics (no solve).
RunReport run_check(const NetworkCase& c);

struct CompareRow {
  double alpha = 0.0;
  double err_norm = 0.0;
  double err_over_alpha2 = 0.0;
  double s_hot_norm = 0.0;
  double s_hot_bound = 0.0;
  bool oracle_converged = false;
  int oracle_iterations = 0;
};

struct CompareReport {
  std::string method_resolved;
  std::vector<CompareRow> rows;
};

/// Linear-vs-Newton sweep with every injection scaled by each alpha. The
/// method is resolved once on the unscaled case.
CompareReport run_compare(const NetworkCase& c, const RunOptions& options, const std::vector<double>& alphas);

}  // namespace pflin
