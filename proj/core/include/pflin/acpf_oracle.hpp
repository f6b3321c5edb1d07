#pragma once

#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

enum class NewtonStart { Flat, NoLoad, Given };

struct NewtonSettings {
  double tolerance = 1e-10;
  int max_iterations = 50;
  NewtonStart initial = NewtonStart::NoLoad;
  /// Starting point when `initial == Given`.
  CVector given;
};

struct NewtonResult {
  CVector voltage;
  bool converged = false;
  int iterations = 0;
  double final_mismatch = 0.0;
};

/// Real residual of the full power-flow equations in rectangular unknowns
/// x = [V_re; V_im]. Row l is the active mismatch of bus l; row N+l is the
/// reactive mismatch (ZIP) or |V_l|^2 - setpoint^2 (PV).
RVector power_flow_residual(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage);

/// Analytic Jacobian of `power_flow_residual` with respect to [V_re; V_im].
RMatrix power_flow_jacobian(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage);

/// Largest per-bus mismatch: |dP + j dQ| at ZIP buses, max(|dP|, |d|V|^2|) at PV buses.
double max_bus_mismatch(const NetworkCase& c, const RVector& residual);

/// Newton-Raphson in rectangular coordinates. Throws SINGULAR_JACOBIAN; an
/// exhausted iteration budget returns the last iterate with converged=false.
NewtonResult solve_newton(const AdmittancePartition& p, const NetworkCase& c,
                          const NewtonSettings& settings = {});

/// Max relative deviation between the analytic Jacobian and central finite
/// differences (step 1e-6) over entries larger than 1e-8.
double jacobian_check(const AdmittancePartition& p, const NetworkCase& c, const CVector& voltage);

}  // namespace pflin
