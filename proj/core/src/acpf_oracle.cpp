#include "pflin/acpf_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pflin/errors.hpp"
#include "pflin/linalg.hpp"
#include "pflin/linearize.hpp"

namespace pflin {

namespace {

CVector bus_currents(const AdmittancePartition& p, const NetworkCase& c, const CVector& v) {
  return p.Y * v + p.Ybar * slack_voltage(c) - load_currents(c);
}

CVector from_real(const RVector& x) {
  const Eigen::Index n = x.size() / 2;
  return x.head(n).cast<Complex>() + kJ * x.tail(n).cast<Complex>();
}

RVector to_real(const CVector& v) {
  RVector x(2 * v.size());
  x << v.real(), v.imag();
  return x;
}

CVector initial_voltage(const AdmittancePartition& p, const NetworkCase& c, const NewtonSettings& s) {
  switch (s.initial) {
    case NewtonStart::Given:
      return s.given;
    case NewtonStart::NoLoad:
      try {
        return compute_noload_voltage(p, load_currents(c), slack_voltage(c)).V;
      } catch (const Error&) {
        return CVector::Ones(p.size());
      }
    case NewtonStart::Flat:
      break;
  }
  return CVector::Ones(p.size());
}

}  // namespace

RVector power_flow_residual(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage) {
  const int n = p.size();
  const CVector s = voltage.cwiseProduct(bus_currents(p, c, voltage).conjugate());
  const CVector target = target_injections(c);
  RVector f(2 * n);
  for (int k = 0; k < n; ++k) {
    f(k) = s(k).real() - target(k).real();
    const Bus& bus = c.buses[k];
    if (bus.kind == BusKind::PV) {
      f(n + k) = std::norm(voltage(k)) - bus.pv->vmag * bus.pv->vmag;
    } else {
      f(n + k) = s(k).imag() - target(k).imag();
    }
  }
  return f;
}

RMatrix power_flow_jacobian(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage) {
  const int n = p.size();
  const CVector current_conj = bus_currents(p, c, voltage).conjugate();
  RMatrix j = RMatrix::Zero(2 * n, 2 * n);
  for (int l = 0; l < n; ++l) {
    const bool pv = c.buses[l].kind == BusKind::PV;
    for (int k = 0; k < n; ++k) {
      // dS_l/dVre_k and dS_l/dVim_k
      Complex d_re = voltage(l) * std::conj(p.Y(l, k));
      Complex d_im = -kJ * voltage(l) * std::conj(p.Y(l, k));
      if (k == l) {
        d_re += current_conj(l);
        d_im += kJ * current_conj(l);
      }
      j(l, k) = d_re.real();
      j(l, n + k) = d_im.real();
      if (!pv) {
        j(n + l, k) = d_re.imag();
        j(n + l, n + k) = d_im.imag();
      }
    }
    if (pv) {
      j(n + l, l) = 2.0 * voltage(l).real();
      j(n + l, n + l) = 2.0 * voltage(l).imag();
    }
  }
  return j;
}

double max_bus_mismatch(const NetworkCase& c, const RVector& residual) {
  const Eigen::Index n = residual.size() / 2;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double m = c.buses[k].kind == BusKind::PV
                         ? std::max(std::abs(residual(k)), std::abs(residual(n + k)))
                         : std::hypot(residual(k), residual(n + k));
    worst = std::max(worst, m);
  }
  return worst;
}

NewtonResult solve_newton(const AdmittancePartition& p, const NetworkCase& c, const NewtonSettings& settings) {
  NewtonResult r;
  r.voltage = initial_voltage(p, c, settings);
  RVector f = power_flow_residual(p, c, r.voltage);
  r.final_mismatch = max_bus_mismatch(c, f);

  while (!(r.final_mismatch <= settings.tolerance) && r.iterations < settings.max_iterations) {
    const RealLu lu(power_flow_jacobian(p, c, r.voltage));
    if (lu.singular()) throw Error(ErrorCode::SingularJacobian, "Newton Jacobian is singular");
    const RVector x = to_real(r.voltage);
    const RVector step = lu.solve(f);

    // Full step unless the mismatch grows; then halve a bounded number of times.
    double t = 1.0;
    CVector trial = from_real(x - step);
    RVector f_trial = power_flow_residual(p, c, trial);
    double m_trial = max_bus_mismatch(c, f_trial);
    for (int halvings = 0; !(m_trial <= r.final_mismatch) && halvings < 10; ++halvings) {
      t *= 0.5;
      trial = from_real(x - t * step);
      f_trial = power_flow_residual(p, c, trial);
      m_trial = max_bus_mismatch(c, f_trial);
    }
    r.voltage = trial;
    f = f_trial;
    r.final_mismatch = m_trial;
    ++r.iterations;
  }
  r.converged = r.final_mismatch <= settings.tolerance;
  return r;
}

double jacobian_check(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage) {
  constexpr double kStep = 1e-6;
  constexpr double kFloor = 1e-8;
  const RMatrix analytic = power_flow_jacobian(p, c, voltage);
  const RVector x = to_real(voltage);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    RVector plus = x;
    RVector minus = x;
    plus(k) += kStep;
    minus(k) -= kStep;
    const RVector column = (power_flow_residual(p, c, from_real(plus)) -
                            power_flow_residual(p, c, from_real(minus))) / (2.0 * kStep);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double scale = std::max(std::abs(analytic(i, k)), std::abs(column(i)));
      if (scale > kFloor) worst = std::max(worst, std::abs(analytic(i, k) - column(i)) / scale);
    }
  }
  return worst;
}

}  // namespace pflin
