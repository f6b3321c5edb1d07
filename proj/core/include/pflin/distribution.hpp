#pragma once

#include "pflin/linearize.hpp"
#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

/// R + jX = (G + jB)^-1, obtained from a single inversion of Y.
struct ImpedanceDecomposition {
  RMatrix R;
  RMatrix X;
};

ImpedanceDecomposition decompose_impedance(const AdmittancePartition& p);

/// The four additive pieces of dV_re and dV_im split by P and Q.
struct CouplingTerms {
  RVector dvre_from_p;
  RVector dvre_from_q;
  RVector dvim_from_p;
  RVector dvim_from_q;

  RVector dv_re() const { return dvre_from_p + dvre_from_q; }
  RVector dv_im() const { return dvim_from_p + dvim_from_q; }
};

/// Distribution-feeder solve: no-load nominal, then the closed form.
/// All non-slack buses must be ZIP (NON_ZIP_BUS_PRESENT otherwise).
LinearSolution solve_distribution(const AdmittancePartition& p, const NetworkCase& c);

/// P/Q coupling split of the closed-form dV around `nominal`, evaluated from
/// R, X and the polar form of the nominal voltage.
CouplingTerms coupling_decomposition(const AdmittancePartition& p, const NominalVoltage& nominal,
                                     const CVector& injections);

struct DecoupledEstimate {
  RVector vmag;
  RVector theta;
  /// How far the network is from the B = 0, theta = 0 assumptions.
  double b_dagger_norm = 0.0;
  double max_abs_theta = 0.0;
};

/// |V| + G^-1 diag(1/|V|) P and theta - G^-1 diag(1/|V|) Q around `nominal`.
/// Always returns the assumption-violation magnitudes with the estimate.
DecoupledEstimate decoupled_estimate(const AdmittancePartition& p, const NominalVoltage& nominal,
                                     const CVector& injections);

/// First-order polar reading of a solution: (|V| + dV_re, theta + dV_im).
std::pair<RVector, RVector> first_order_polar(const NominalVoltage& nominal, const CVector& dv);

/// Current-free special case written with w = -Y^-1 Ybar:
///   V_slack (w + Y^-1 diag(1/conj(w)) conj(S) / V_o^2).
LinearSolution solve_bolognani_special(const AdmittancePartition& p, Complex v_slack, const CVector& injections);

/// Case-level form; rejects PV buses and nonzero load currents.
LinearSolution solve_bolognani_special(const AdmittancePartition& p, const NetworkCase& c);

/// ||conj(Y)||dagger ||dV||^2 for distribution-path solutions; the
/// current-free form uses ||Y^-1 diag(1/conj(w)) conj(S)||^2 / V_o^2.
double shot_bound_distribution(const AdmittancePartition& p, const LinearSolution& sol);

}  // namespace pflin
