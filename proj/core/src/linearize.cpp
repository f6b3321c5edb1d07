#include "pflin/linearize.hpp"

#include <cstdio>
#include <string>

#include "pflin/errors.hpp"
#include "pflin/linalg.hpp"

namespace pflin {

namespace {

// Anything smaller is treated as a vanished no-load voltage entry.
constexpr double kZeroVoltage = 1e-12;

std::string pivot_message(const char* what, double ratio) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s is singular (pivot ratio %.3e)", what, ratio);
  return buf;
}

void require_nonzero_entries(const CVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!(std::abs(v(k)) >= kZeroVoltage)) {
      throw Error(ErrorCode::ZeroNoLoadVoltage,
                  "no-load voltage vanishes at bus " + std::to_string(k + 1));
    }
  }
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::General2N: return "general";
    case Method::NoLoadClosedForm: return "noload";
    case Method::LosslessFlat: return "lossless";
    case Method::ClassicalDC: return "dc";
    case Method::BolognaniSpecial: return "bolognani";
  }
  return "unknown";
}

PerturbationCoefficients assemble_coefficients(const AdmittancePartition& p, const NominalVoltage& nominal,
                                               const CVector& load_current, Complex v_slack) {
  const CMatrix y_conj = p.Y.conjugate();
  // Net current leaving each bus at the nominal point, conjugated.
  const CVector net = y_conj * nominal.V.conjugate() + p.Ybar.conjugate() * std::conj(v_slack) -
                      load_current.conjugate();
  PerturbationCoefficients c;
  c.nominal = nominal;
  c.v_slack = v_slack;
  c.gamma = net;
  c.xi = nominal.V.asDiagonal() * y_conj;
  c.pi = -nominal.V.cwiseProduct(net);
  return c;
}

CVector linear_injection(const PerturbationCoefficients& coeffs, const CVector& dv) {
  return coeffs.gamma.cwiseProduct(dv) + coeffs.xi * dv.conjugate() - coeffs.pi;
}

RMatrix real_block_matrix(const PerturbationCoefficients& coeffs) {
  const Eigen::Index n = coeffs.xi.rows();
  const RMatrix g_re = coeffs.gamma.real().asDiagonal();
  const RMatrix g_im = coeffs.gamma.imag().asDiagonal();
  const RMatrix x_re = coeffs.xi.real();
  const RMatrix x_im = coeffs.xi.imag();
  RMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = g_re + x_re;
  a.topRightCorner(n, n) = -g_im + x_im;
  a.bottomLeftCorner(n, n) = g_im + x_im;
  a.bottomRightCorner(n, n) = g_re - x_re;
  return a;
}

LinearSolution solve_general_2n(const PerturbationCoefficients& coeffs, const CVector& injections) {
  const Eigen::Index n = coeffs.xi.rows();
  RVector rhs(2 * n);
  rhs.head(n) = injections.real() + coeffs.pi.real();
  rhs.tail(n) = injections.imag() + coeffs.pi.imag();

  const RealLu lu(real_block_matrix(coeffs));
  LinearSolution sol;
  sol.nominal = coeffs.nominal;
  sol.method = Method::General2N;
  sol.injections = injections;
  sol.v_slack = coeffs.v_slack;
  sol.diagnostics.rcond = lu.rcond();
  sol.diagnostics.pivot_ratio = lu.pivot_ratio();
  sol.diagnostics.singular = lu.singular();
  if (lu.singular()) {
    throw Error(ErrorCode::SingularSystem, pivot_message("2N perturbation system", lu.pivot_ratio()));
  }
  const RVector x = lu.solve(rhs);
  sol.dv = x.head(n).cast<Complex>() + kJ * x.tail(n).cast<Complex>();
  return sol;
}

LinearSolution solve_general(const AdmittancePartition& p, const NetworkCase& c, const NominalVoltage& nominal) {
  if (has_pv_buses(c)) {
    throw Error(ErrorCode::PvUnsupportedInGeneral,
                "PV buses leave Q unknown; use the lossless or dc method");
  }
  const auto coeffs = assemble_coefficients(p, nominal, load_currents(c), slack_voltage(c));
  return solve_general_2n(coeffs, target_injections(c));
}

NominalVoltage compute_noload_voltage(const AdmittancePartition& p, const CVector& load_current,
                                      Complex v_slack) {
  const ComplexLu lu(p.Y);
  if (lu.singular()) throw Error(ErrorCode::SingularY, pivot_message("Y", lu.pivot_ratio()));
  NominalVoltage v{lu.solve(load_current - p.Ybar * v_slack), NominalOrigin::NoLoad};
  require_nonzero_entries(v.V);
  return v;
}

LinearSolution solve_noload_closed_form(const AdmittancePartition& p, const NominalVoltage& nominal,
                                        const CVector& injections) {
  if (nominal.origin != NominalOrigin::NoLoad) {
    throw Error(ErrorCode::NominalMismatch, "closed form requires the no-load nominal voltage");
  }
  require_nonzero_entries(nominal.V);
  const ComplexLu lu(p.Y);
  if (lu.singular()) throw Error(ErrorCode::SingularY, pivot_message("Y", lu.pivot_ratio()));

  LinearSolution sol;
  sol.nominal = nominal;
  sol.method = Method::NoLoadClosedForm;
  sol.injections = injections;
  sol.diagnostics.rcond = lu.rcond();
  sol.diagnostics.pivot_ratio = lu.pivot_ratio();
  sol.dv = lu.solve(injections.conjugate().cwiseQuotient(nominal.V.conjugate()));
  return sol;
}

}  // namespace pflin
