#include "pflin/distribution.hpp"

#include <cmath>
#include <string>

#include "pflin/errors.hpp"
#include "pflin/linalg.hpp"
#include "pflin/residuals.hpp"

namespace pflin {

namespace {

constexpr double kMinMagnitude = 1e-12;

ComplexLu factor_y(const AdmittancePartition& p) {
  ComplexLu lu(p.Y);
  if (lu.singular()) throw Error(ErrorCode::SingularY, "Y is singular");
  return lu;
}

void require_all_zip(const NetworkCase& c) {
  for (int k = 0; k < non_slack_count(c); ++k) {
    if (c.buses[k].kind != BusKind::ZIP) {
      throw Error(ErrorCode::NonZipBusPresent, "bus " + std::to_string(k + 1) + " is not a ZIP bus");
    }
  }
}

struct Polar {
  RVector mag;
  RVector angle;
};

Polar to_polar(const CVector& v) {
  Polar out{RVector(v.size()), RVector(v.size())};
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out.mag(k) = std::abs(v(k));
    if (!(out.mag(k) >= kMinMagnitude)) {
      throw Error(ErrorCode::ZeroNoLoadVoltage, "nominal voltage vanishes at bus " + std::to_string(k + 1));
    }
    out.angle(k) = std::atan2(v(k).imag(), v(k).real());
  }
  return out;
}

}  // namespace

ImpedanceDecomposition decompose_impedance(const AdmittancePartition& p) {
  const CMatrix z = factor_y(p).inverse();
  return {z.real(), z.imag()};
}

LinearSolution solve_distribution(const AdmittancePartition& p, const NetworkCase& c) {
  require_all_zip(c);
  const CVector load_current = load_currents(c);
  const Complex v_slack = slack_voltage(c);
  const auto structure = check_lemma1_structure(p, load_current, v_slack);

  const auto nominal = compute_noload_voltage(p, load_current, v_slack);
  auto sol = solve_noload_closed_form(p, nominal, target_injections(c));
  sol.v_slack = v_slack;
  sol.diagnostics.lemma1_ok = structure.verdict;
  return sol;
}

CouplingTerms coupling_decomposition(const AdmittancePartition& p, const NominalVoltage& nominal,
                                     const CVector& injections) {
  const Polar polar = to_polar(nominal.V);
  const auto [r, x] = decompose_impedance(p);

  const RVector c = polar.angle.array().cos() / polar.mag.array();
  const RVector s = polar.angle.array().sin() / polar.mag.array();
  const RMatrix direct = r * c.asDiagonal() - x * s.asDiagonal();
  const RMatrix cross = x * c.asDiagonal() + r * s.asDiagonal();
  const RVector active = injections.real();
  const RVector reactive = injections.imag();

  CouplingTerms t;
  t.dvre_from_p = direct * active;
  t.dvre_from_q = cross * reactive;
  t.dvim_from_p = cross * active;
  t.dvim_from_q = -(direct * reactive);
  return t;
}

DecoupledEstimate decoupled_estimate(const AdmittancePartition& p, const NominalVoltage& nominal,
                                     const CVector& injections) {
  const Polar polar = to_polar(nominal.V);
  const RealLu lu(p.G());
  if (lu.singular()) throw Error(ErrorCode::SingularG, "G is singular");

  const RVector p_scaled = injections.real().cwiseQuotient(polar.mag);
  const RVector q_scaled = injections.imag().cwiseQuotient(polar.mag);
  DecoupledEstimate e;
  e.vmag = polar.mag + lu.solve(p_scaled);
  e.theta = polar.angle - lu.solve(q_scaled);
  e.b_dagger_norm = dagger_norm(p.B());
  e.max_abs_theta = polar.angle.size() > 0 ? polar.angle.cwiseAbs().maxCoeff() : 0.0;
  return e;
}

std::pair<RVector, RVector> first_order_polar(const NominalVoltage& nominal, const CVector& dv) {
  const Polar polar = to_polar(nominal.V);
  return {polar.mag + dv.real(), polar.angle + dv.imag()};
}

LinearSolution solve_bolognani_special(const AdmittancePartition& p, Complex v_slack, const CVector& injections) {
  const ComplexLu lu = factor_y(p);
  const CVector w = -lu.solve(p.Ybar);
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (!(std::abs(w(k)) >= kMinMagnitude)) {
      throw Error(ErrorCode::ZeroNoLoadVoltage, "open-circuit voltage vanishes at bus " + std::to_string(k + 1));
    }
  }
  const double v0 = std::abs(v_slack);
  const CVector x = lu.solve(injections.conjugate().cwiseQuotient(w.conjugate()));

  LinearSolution sol;
  sol.nominal = {v_slack * w, NominalOrigin::NoLoad};
  sol.dv = v_slack * x / (v0 * v0);
  sol.method = Method::BolognaniSpecial;
  sol.injections = injections;
  sol.v_slack = v_slack;
  sol.diagnostics.rcond = lu.rcond();
  sol.diagnostics.pivot_ratio = lu.pivot_ratio();
  return sol;
}

LinearSolution solve_bolognani_special(const AdmittancePartition& p, const NetworkCase& c) {
  require_all_zip(c);
  if (load_currents(c).cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorCode::NonzeroCurrentLoad, "current-free form needs I_L = 0 at every bus");
  }
  return solve_bolognani_special(p, slack_voltage(c), target_injections(c));
}

double shot_bound_distribution(const AdmittancePartition& p, const LinearSolution& sol) {
  const double y_norm = dagger_norm(CMatrix(p.Y.conjugate()));
  if (sol.method == Method::BolognaniSpecial) {
    const double v0 = std::abs(sol.v_slack);
    const CVector w = sol.nominal.V / sol.v_slack;
    const CVector x = factor_y(p).solve(sol.injections.conjugate().cwiseQuotient(w.conjugate()));
    return y_norm * x.squaredNorm() / (v0 * v0);
  }
  return y_norm * sol.dv.squaredNorm();
}

}  // namespace pflin
