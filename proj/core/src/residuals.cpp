#include "pflin/residuals.hpp"

#include <algorithm>
#include <cmath>

#include "pflin/errors.hpp"

namespace pflin {

double dagger_norm(const CMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return a.rowwise().norm().maxCoeff();
}

double dagger_norm(const RMatrix& a) {
  if (a.rows() == 0) return 0.0;
  return a.rowwise().norm().maxCoeff();
}

ResidualReport compute_shot(const AdmittancePartition& p, const CVector& dv) {
  ResidualReport r;
  r.s_hot = dv.cwiseProduct(p.Y.conjugate() * dv.conjugate());

  const RMatrix g = p.G();
  const RMatrix b = p.B();
  const RVector x = dv.real();
  const RVector y = dv.imag();
  const RVector gx_minus_by = g * x - b * y;
  const RVector gy_plus_bx = g * y + b * x;
  r.p_hot = x.cwiseProduct(gx_minus_by) + y.cwiseProduct(gy_plus_bx);
  r.q_hot = y.cwiseProduct(gx_minus_by) - x.cwiseProduct(gy_plus_bx);

  const double scale = std::max(1.0, dagger_norm(p.Y) * dv.squaredNorm());
  const double gap = std::max((r.s_hot.real() - r.p_hot).cwiseAbs().maxCoeff(),
                              (r.s_hot.imag() - r.q_hot).cwiseAbs().maxCoeff());
  if (dv.size() > 0 && !(gap <= 1e-12 * scale)) {
    throw Error(ErrorCode::InternalConsistency, "complex and expanded residual forms disagree");
  }

  r.s_norm = r.s_hot.norm();
  r.p_norm = r.p_hot.norm();
  r.q_norm = r.q_hot.norm();
  return r;
}

BoundInequalities verify_bounds(const CVector& x, const CMatrix& a) {
  constexpr double kRel = 1e-12;
  BoundInequalities b;
  const CVector ax = a * x;
  const double dn = dagger_norm(a);
  const double xn = x.norm();
  b.lhs_quadratic = x.cwiseProduct(ax).norm();
  b.rhs_quadratic = dn * xn * xn;
  b.lhs_linear = ax.norm();
  b.rhs_linear = dn * xn;
  b.both_hold = b.lhs_quadratic <= b.rhs_quadratic * (1.0 + kRel) &&
                b.lhs_linear <= b.rhs_linear * (1.0 + kRel);
  return b;
}

CVector nonlinear_mismatch(const AdmittancePartition& p, const CVector& voltage, const CVector& load_current,
                           Complex v_slack, const CVector& target) {
  const CVector current = p.Y * voltage + p.Ybar * v_slack - load_current;
  return voltage.cwiseProduct(current.conjugate()) - target;
}

CVector nonlinear_mismatch(const AdmittancePartition& p, const CVector& voltage, const NetworkCase& c) {
  return nonlinear_mismatch(p, voltage, load_currents(c), slack_voltage(c), target_injections(c));
}

}  // namespace pflin
