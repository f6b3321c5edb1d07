#include "pflin/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pflin/errors.hpp"
#include "pflin/linalg.hpp"
#include "pflin/residuals.hpp"

namespace pflin {

namespace {

RMatrix susceptance_without_shunts(const AdmittancePartition& p) {
  RMatrix m = p.B();
  m.diagonal() -= p.Bsh();
  return m;
}

}  // namespace

double max_conductance(const AdmittancePartition& p) {
  double g = p.Y.size() > 0 ? p.Y.real().cwiseAbs().maxCoeff() : 0.0;
  if (p.Ybar.size() > 0) g = std::max(g, p.Ybar.real().cwiseAbs().maxCoeff());
  return g;
}

LosslessSystem make_lossless_system(const AdmittancePartition& p, const RVector& active_power,
                                    const CVector& load_current, Complex v_slack) {
  const double g = max_conductance(p);
  if (!(g <= kLosslessTolerance)) {
    throw Error(ErrorCode::LossyNetwork, "max conductance " + std::to_string(g) + " exceeds 1e-9");
  }
  if (std::abs(v_slack - Complex{1.0, 0.0}) > 1e-12) {
    throw Error(ErrorCode::SlackNotUnity, "flat-voltage solution needs V_slack = 1 at angle 0");
  }
  LosslessSystem s;
  s.B = p.B();
  s.Bsh = p.Bsh();
  s.phi_re = -load_current.real();
  s.phi_im = -susceptance_without_shunts(p);
  s.phi_im.diagonal() -= load_current.imag();
  s.P = active_power;
  s.load_current = load_current;
  s.slack_adjacent = slack_adjacent_buses(p);
  return s;
}

LosslessSystem make_lossless_system(const AdmittancePartition& p, const NetworkCase& c) {
  return make_lossless_system(p, target_injections(c).real(), load_currents(c), slack_voltage(c));
}

Theorem1Conditions check_theorem1_conditions(const LosslessSystem& sys, const std::vector<int>& slack_adjacent) {
  constexpr double kRel = 1e-12;
  const Eigen::Index n = sys.phi_im.rows();
  Theorem1Conditions t;
  t.weak.resize(static_cast<std::size_t>(n));
  t.lhs.resize(static_cast<std::size_t>(n));
  t.rhs.resize(static_cast<std::size_t>(n));
  for (Eigen::Index l = 0; l < n; ++l) {
    double off = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m != l) off += std::abs(sys.B(l, m));
    }
    t.lhs[l] = std::abs(sys.phi_im(l, l));
    t.rhs[l] = off;
    t.weak[l] = t.lhs[l] >= off * (1.0 - kRel);
    if (!t.weak[l]) t.violated.push_back(static_cast<int>(l));
  }
  for (int l : slack_adjacent) {
    if (t.lhs[l] - t.rhs[l] > kRel * std::max(t.lhs[l], t.rhs[l])) t.strict_at_slack_adjacent = true;
  }
  t.overall = t.violated.empty() && t.strict_at_slack_adjacent;
  return t;
}

LinearSolution solve_lossless_flat(const LosslessSystem& sys, bool override_conditions) {
  const auto conditions = check_theorem1_conditions(sys, sys.slack_adjacent);
  if (!conditions.overall && !override_conditions) {
    throw Error(ErrorCode::Theorem1ConditionsViolated,
                "phi_im is not certified invertible; pass the override flag to attempt the solve");
  }
  const RealLu lu(sys.phi_im);
  if (lu.singular()) throw Error(ErrorCode::SingularPhi, "phi_im factorization failed");

  LinearSolution sol;
  const auto n = static_cast<int>(sys.P.size());
  sol.nominal = NominalVoltage::flat(n);
  sol.method = Method::LosslessFlat;
  sol.injections = sys.P.cast<Complex>();
  sol.dv = kJ * lu.solve(sys.P + sys.load_current.real()).cast<Complex>();
  sol.diagnostics.rcond = lu.rcond();
  sol.diagnostics.pivot_ratio = lu.pivot_ratio();
  sol.diagnostics.theorem1_ok = conditions.overall;
  sol.diagnostics.conditions_overridden = !conditions.overall;
  sol.diagnostics.violated_buses = conditions.violated;
  return sol;
}

double qhot_bound(const LosslessSystem& sys, const LinearSolution& sol) {
  if (sol.method != Method::LosslessFlat) {
    throw Error(ErrorCode::NominalMismatch, "reactive bound applies to the lossless flat solution only");
  }
  return dagger_norm(sys.B) * sol.dv_im().squaredNorm();
}

RVector solve_classical_dc(const AdmittancePartition& p, const RVector& active_power, bool keep_gsh) {
  const RealLu lu(-susceptance_without_shunts(p));
  if (lu.singular()) throw Error(ErrorCode::SingularB, "B - diag(Bsh) is singular");
  const RVector rhs = keep_gsh ? RVector(active_power - p.Gsh()) : active_power;
  return lu.solve(rhs);
}

LinearSolution dc_as_solution(const AdmittancePartition& p, const RVector& active_power, const RVector& theta) {
  LinearSolution sol;
  sol.nominal = NominalVoltage::flat(p.size());
  sol.method = Method::ClassicalDC;
  sol.injections = active_power.cast<Complex>();
  sol.dv = kJ * theta.cast<Complex>();
  return sol;
}

}  // namespace pflin
