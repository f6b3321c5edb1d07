#include "pflin/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "pflin/acpf_oracle.hpp"
#include "pflin/distribution.hpp"
#include "pflin/errors.hpp"
#include "pflin/linearize.hpp"
#include "pflin/residuals.hpp"
#include "pflin/transmission.hpp"

namespace pflin {

namespace {

struct Summary {
  std::vector<SummaryEntry> entries;

  void add(std::string key, SummaryValue v) { entries.push_back({std::move(key), std::move(v)}); }

  const SummaryValue* find(std::string_view key) const {
    for (const auto& e : entries) {
      if (e.key == key) return &e.value;
    }
    return nullptr;
  }
};

std::string bus_list(const std::vector<int>& zero_based) {
  std::string out;
  for (int k : zero_based) {
    if (!out.empty()) out += ' ';
    out += std::to_string(k + 1);
  }
  return out;
}

bool all_zip(const NetworkCase& c) {
  for (int k = 0; k < non_slack_count(c); ++k) {
    if (c.buses[k].kind != BusKind::ZIP) return false;
  }
  return true;
}

bool slack_is_unity(const NetworkCase& c) {
  return std::abs(slack_voltage(c) - Complex{1.0, 0.0}) <= 1e-12;
}

void add_lemma1(Summary& s, const StructureDiagnosis& d) {
  s.add("lemma1_y_graph_connected", d.connected);
  s.add("lemma1_weakly_dominant", d.weakly_dominant);
  s.add("lemma1_strict_at_slack_adjacent", d.strict_at_slack_adjacent);
  s.add("lemma1_noload_nonzero", d.noload_nonzero);
  s.add("lemma1_verdict", d.verdict);
  std::string reasons;
  for (auto r : d.reasons) {
    if (!reasons.empty()) reasons += ' ';
    reasons += structure_reason_name(r);
  }
  s.add("lemma1_reasons", reasons);
}

void add_theorem1(Summary& s, const Theorem1Conditions& t) {
  s.add("theorem1_strict_at_slack_adjacent", t.strict_at_slack_adjacent);
  s.add("theorem1_overall", t.overall);
  s.add("theorem1_violated_buses", bus_list(t.violated));
}

MethodChoice resolve(const AdmittancePartition& p, const NetworkCase& c, const StructureDiagnosis& lemma,
                     MethodChoice requested) {
  if (requested != MethodChoice::Auto) return requested;
  if (max_conductance(p) <= kLosslessTolerance && slack_is_unity(c)) {
    const auto sys = make_lossless_system(p, c);
    if (check_theorem1_conditions(sys, sys.slack_adjacent).overall) return MethodChoice::Lossless;
  }
  if (all_zip(c)) {
    if (lemma.verdict) return MethodChoice::NoLoad;
    try {
      compute_noload_voltage(p, load_currents(c), slack_voltage(c));
      return MethodChoice::NoLoad;
    } catch (const Error&) {
    }
  }
  return MethodChoice::General;
}

struct Outcome {
  LinearSolution sol;
  // Decoupled estimates replace the per-bus magnitude/angle columns.
  std::optional<DecoupledEstimate> decoupled;
  bool small_angle = false;
};

Outcome solve_with(MethodChoice m, const AdmittancePartition& p, const NetworkCase& c, const RunOptions& opt,
                   Summary& s) {
  Outcome out;
  switch (m) {
    case MethodChoice::Auto:
    case MethodChoice::General:
      out.sol = solve_general(p, c, NominalVoltage::flat(p.size()));
      break;
    case MethodChoice::NoLoad:
      out.sol = solve_distribution(p, c);
      break;
    case MethodChoice::Bolognani:
      out.sol = solve_bolognani_special(p, c);
      break;
    case MethodChoice::Lossless: {
      const auto sys = make_lossless_system(p, c);
      add_theorem1(s, check_theorem1_conditions(sys, sys.slack_adjacent));
      out.sol = solve_lossless_flat(sys, opt.override_conditions);
      s.add("q_hot_bound", qhot_bound(sys, out.sol));
      break;
    }
    case MethodChoice::Dc: {
      const RVector active = target_injections(c).real();
      const RVector theta = solve_classical_dc(p, active, false);
      const RVector theta_keep = solve_classical_dc(p, active, true);
      out.sol = dc_as_solution(p, active, theta);
      out.small_angle = true;
      s.add("dc_gsh_error_norm", (theta_keep - theta).norm());
      break;
    }
    case MethodChoice::Decoupled: {
      if (!all_zip(c)) throw Error(ErrorCode::NonZipBusPresent, "decoupled estimate needs an all-ZIP network");
      const auto nominal = compute_noload_voltage(p, load_currents(c), slack_voltage(c));
      const auto est = decoupled_estimate(p, nominal, target_injections(c));
      CVector estimate(p.size());
      for (int k = 0; k < p.size(); ++k) estimate(k) = std::polar(est.vmag(k), est.theta(k));
      out.sol.nominal = nominal;
      out.sol.dv = estimate - nominal.V;
      out.sol.method = Method::NoLoadClosedForm;
      out.sol.injections = target_injections(c);
      out.sol.v_slack = slack_voltage(c);
      s.add("decoupled_b_dagger_norm", est.b_dagger_norm);
      s.add("decoupled_max_abs_theta_deg", rad_to_deg(est.max_abs_theta));
      out.decoupled = est;
      break;
    }
  }
  return out;
}

}  // namespace

std::string_view method_choice_name(MethodChoice m) {
  switch (m) {
    case MethodChoice::Auto: return "auto";
    case MethodChoice::General: return "general";
    case MethodChoice::NoLoad: return "noload";
    case MethodChoice::Lossless: return "lossless";
    case MethodChoice::Dc: return "dc";
    case MethodChoice::Bolognani: return "bolognani";
    case MethodChoice::Decoupled: return "decoupled";
  }
  return "unknown";
}

std::optional<MethodChoice> parse_method_choice(std::string_view name) {
  for (auto m : {MethodChoice::Auto, MethodChoice::General, MethodChoice::NoLoad, MethodChoice::Lossless,
                 MethodChoice::Dc, MethodChoice::Bolognani, MethodChoice::Decoupled}) {
    if (method_choice_name(m) == name) return m;
  }
  return std::nullopt;
}

const SummaryValue* RunReport::find(std::string_view key) const {
  for (const auto& e : summary) {
    if (e.key == key) return &e.value;
  }
  return nullptr;
}

RunReport run_check(const NetworkCase& c) {
  const auto p = build_admittance(c);
  Summary s;
  s.add("buses", static_cast<double>(p.size() + 1));
  add_lemma1(s, check_lemma1_structure(p, load_currents(c), slack_voltage(c)));
  s.add("lossless_max_conductance", max_conductance(p));
  s.add("lossless_gate", max_conductance(p) <= kLosslessTolerance);
  s.add("slack_unity", slack_is_unity(c));
  if (max_conductance(p) <= kLosslessTolerance) {
    const auto sys = make_lossless_system(p, target_injections(c).real(), load_currents(c), Complex{1.0, 0.0});
    add_theorem1(s, check_theorem1_conditions(sys, sys.slack_adjacent));
  }
  RunReport r;
  r.method_requested = "check";
  r.method_resolved = "check";
  r.summary = std::move(s.entries);
  return r;
}

RunReport run_pipeline(const NetworkCase& c, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = build_admittance(c);
  const auto lemma = check_lemma1_structure(p, load_currents(c), slack_voltage(c));
  const MethodChoice method = resolve(p, c, lemma, options.method);

  Summary s;
  s.add("buses", static_cast<double>(p.size() + 1));
  add_lemma1(s, lemma);
  s.add("lossless_max_conductance", max_conductance(p));

  const auto t_solve = std::chrono::steady_clock::now();
  Outcome out = solve_with(method, p, c, options, s);
  const auto t_solved = std::chrono::steady_clock::now();
  const LinearSolution& sol = out.sol;

  const auto res = compute_shot(p, sol.dv);
  const double s_bound = dagger_norm(CMatrix(p.Y.conjugate())) * sol.dv.squaredNorm();
  const CVector v_lin = sol.approx_voltage();
  const CVector mismatch = nonlinear_mismatch(p, v_lin, c);
  double q_mismatch = 0.0;
  for (int k = 0; k < p.size(); ++k) {
    if (c.buses[k].kind == BusKind::ZIP) q_mismatch = std::max(q_mismatch, std::abs(mismatch(k).imag()));
  }

  s.add("s_hot_norm", res.s_norm);
  s.add("p_hot_norm", res.p_norm);
  s.add("q_hot_norm", res.q_norm);
  s.add("s_hot_bound", s_bound);
  s.add("s_hot_bound_holds", res.s_norm <= s_bound + 1e-12);
  if (const auto* qb = s.find("q_hot_bound")) {
    s.add("q_hot_bound_holds", res.q_norm <= std::get<double>(*qb) + 1e-12);
  }
  s.add("mismatch_p_max", mismatch.size() ? mismatch.real().cwiseAbs().maxCoeff() : 0.0);
  s.add("mismatch_q_max_zip", q_mismatch);
  if (std::isfinite(sol.diagnostics.rcond)) s.add("rcond", sol.diagnostics.rcond);
  s.add("conditions_overridden", sol.diagnostics.conditions_overridden);

  RunReport r;
  r.method_requested = std::string(method_choice_name(options.method));
  r.method_resolved = std::string(method_choice_name(method));

  std::optional<NewtonResult> oracle;
  if (options.with_oracle) {
    oracle = solve_newton(p, c);
    r.has_oracle = true;
    const CVector diff = v_lin - oracle->voltage;
    s.add("oracle_converged", oracle->converged);
    s.add("oracle_iterations", static_cast<double>(oracle->iterations));
    s.add("oracle_final_mismatch", oracle->final_mismatch);
    s.add("oracle_err_norm", diff.norm());
    s.add("oracle_err_max", diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0);
  }

  for (int k = 0; k < p.size(); ++k) {
    BusRow row;
    row.bus = c.buses[k].id;
    row.v_nom = sol.nominal.V(k);
    row.dv = sol.dv(k);
    row.vmag = std::abs(v_lin(k));
    row.theta_deg = rad_to_deg(out.small_angle ? sol.dv(k).imag() : std::arg(v_lin(k)));
    if (out.decoupled) {
      row.vmag = out.decoupled->vmag(k);
      row.theta_deg = rad_to_deg(out.decoupled->theta(k));
    }
    row.p_hot = res.p_hot(k);
    row.q_hot = res.q_hot(k);
    if (oracle) {
      row.v_oracle = oracle->voltage(k);
      row.abs_err = std::abs(v_lin(k) - oracle->voltage(k));
    }
    r.rows.push_back(row);
  }

  if (options.with_timings) {
    using ms = std::chrono::duration<double, std::milli>;
    s.add("time_solve_ms", ms(t_solved - t_solve).count());
    s.add("time_total_ms", ms(std::chrono::steady_clock::now() - t0).count());
  }
  r.summary = std::move(s.entries);
  return r;
}

CompareReport run_compare(const NetworkCase& c, const RunOptions& options, const std::vector<double>& alphas) {
  const auto p = build_admittance(c);
  const auto lemma = check_lemma1_structure(p, load_currents(c), slack_voltage(c));
  const MethodChoice method = resolve(p, c, lemma, options.method);

  CompareReport report;
  report.method_resolved = std::string(method_choice_name(method));
  const double y_norm = dagger_norm(CMatrix(p.Y.conjugate()));
  for (double alpha : alphas) {
    const NetworkCase scaled = scale_injections(c, alpha);
    Summary scratch;
    const Outcome out = solve_with(method, p, scaled, options, scratch);
    const auto newton = solve_newton(p, scaled);
    CompareRow row;
    row.alpha = alpha;
    row.err_norm = (out.sol.approx_voltage() - newton.voltage).norm();
    row.err_over_alpha2 = alpha != 0.0 ? row.err_norm / (alpha * alpha) : 0.0;
    row.s_hot_norm = compute_shot(p, out.sol.dv).s_norm;
    row.s_hot_bound = y_norm * out.sol.dv.squaredNorm();
    row.oracle_converged = newton.converged;
    row.oracle_iterations = newton.iterations;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace pflin
