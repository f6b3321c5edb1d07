#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

enum class NominalOrigin { Flat, NoLoad, UserSupplied };

struct NominalVoltage {
  CVector V;
  NominalOrigin origin = NominalOrigin::Flat;

  static NominalVoltage flat(int n) { return {CVector::Ones(n), NominalOrigin::Flat}; }
};

/// First-order coefficients of the power balance around a nominal voltage:
///   Gamma * dV + Xi * conj(dV) = S + Pi.
/// Gamma is diagonal and stored as its diagonal.
struct PerturbationCoefficients {
  NominalVoltage nominal;
  Complex v_slack{1.0, 0.0};
  CVector gamma;
  CMatrix xi;
  CVector pi;

  CMatrix gamma_matrix() const { return gamma.asDiagonal(); }
};

enum class Method { General2N, NoLoadClosedForm, LosslessFlat, ClassicalDC, BolognaniSpecial };

std::string_view method_name(Method m);

struct SolveDiagnostics {
  double rcond = std::numeric_limits<double>::quiet_NaN();
  double pivot_ratio = std::numeric_limits<double>::quiet_NaN();
  bool singular = false;
  std::optional<bool> lemma1_ok;
  std::optional<bool> theorem1_ok;
  bool conditions_overridden = false;
  std::vector<int> violated_buses;  // 0-based
};

struct LinearSolution {
  NominalVoltage nominal;
  CVector dv;
  Method method = Method::General2N;
  SolveDiagnostics diagnostics;
  /// Operating point the solve targeted.
  CVector injections;
  Complex v_slack{1.0, 0.0};

  CVector approx_voltage() const { return nominal.V + dv; }
  RVector dv_re() const { return dv.real(); }
  RVector dv_im() const { return dv.imag(); }
};

PerturbationCoefficients assemble_coefficients(const AdmittancePartition& p, const NominalVoltage& nominal,
                                               const CVector& load_current, Complex v_slack);

/// Gamma*dV + Xi*conj(dV) - Pi: the injection the linear model attributes to
/// nominal + dV. Equals the target S wherever the linear rows were enforced.
CVector linear_injection(const PerturbationCoefficients& coeffs, const CVector& dv);

/// The real 2N x 2N form of the coefficient system.
RMatrix real_block_matrix(const PerturbationCoefficients& coeffs);

/// Solves the 2N real block system for [dV_re; dV_im]. Throws
/// SINGULAR_SYSTEM (message carries the pivot ratio) on a singular matrix.
LinearSolution solve_general_2n(const PerturbationCoefficients& coeffs, const CVector& injections);

/// Case-level entry: rejects PV buses, assembles at `nominal` and solves.
LinearSolution solve_general(const AdmittancePartition& p, const NetworkCase& c, const NominalVoltage& nominal);

/// Y^-1 (I_L - Ybar V_slack).
NominalVoltage compute_noload_voltage(const AdmittancePartition& p, const CVector& load_current,
                                      Complex v_slack);

/// dV = Y^-1 diag(1/conj(V)) conj(S) around a no-load nominal.
LinearSolution solve_noload_closed_form(const AdmittancePartition& p, const NominalVoltage& nominal,
                                        const CVector& injections);

}  // namespace pflin
