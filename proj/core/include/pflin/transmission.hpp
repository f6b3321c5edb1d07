#pragma once

#include <vector>

#include "pflin/linearize.hpp"
#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

/// Largest |G| entry (or |Re Ybar|) for a network to count as lossless.
inline constexpr double kLosslessTolerance = 1e-9;

/// Flat-start system of a lossless network with V_slack = 1:
///   phi_re * dV_re + phi_im * dV_im = P + I_L,re
/// with phi_re = -diag(I_L,re) and phi_im = -(B - diag(Bsh)) - diag(I_L,im).
struct LosslessSystem {
  RMatrix B;
  RVector Bsh;
  RVector phi_re;  // diagonal
  RMatrix phi_im;
  RVector P;
  CVector load_current;
  std::vector<int> slack_adjacent;  // 0-based
};

/// max(|G_lm|, |Re Ybar_l|) over the partition.
double max_conductance(const AdmittancePartition& p);

/// Throws LOSSY_NETWORK when the conductance gate fails and SLACK_NOT_UNITY
/// when V_slack != 1∠0.
LosslessSystem make_lossless_system(const AdmittancePartition& p, const NetworkCase& c);
LosslessSystem make_lossless_system(const AdmittancePartition& p, const RVector& active_power,
                                    const CVector& load_current, Complex v_slack);

struct Theorem1Conditions {
  std::vector<bool> weak;         // per bus
  std::vector<double> lhs;        // |phi_im diagonal|
  std::vector<double> rhs;        // sum_{m != l} |b_lm| over non-slack columns
  bool strict_at_slack_adjacent = false;  // strict for at least one slack-adjacent bus
  bool overall = false;
  std::vector<int> violated;      // 0-based buses failing the weak condition
};

/// Row dominance of phi_im: weak at every bus, strict at one or more
/// slack-adjacent buses.
Theorem1Conditions check_theorem1_conditions(const LosslessSystem& sys, const std::vector<int>& slack_adjacent);

/// dV = j phi_im^-1 (P + I_L,re) around the flat profile. Without
/// `override_conditions`, failing conditions throw THEOREM1_CONDITIONS_VIOLATED;
/// with it, the solve proceeds and the diagnostics list the violated buses.
LinearSolution solve_lossless_flat(const LosslessSystem& sys, bool override_conditions = false);

/// ||B||dagger ||phi_im^-1 (P + I_L,re)||^2 for a LosslessFlat solution.
double qhot_bound(const LosslessSystem& sys, const LinearSolution& sol);

/// Classical DC power flow: -(B - diag(Bsh)) theta = P, or with
/// `keep_gsh` the uncollapsed -(B - diag(Bsh)) dV_im = P - Gsh.
RVector solve_classical_dc(const AdmittancePartition& p, const RVector& active_power, bool keep_gsh);

/// Flat-nominal LinearSolution with dV = j theta, for reporting DC results
/// alongside the other methods.
LinearSolution dc_as_solution(const AdmittancePartition& p, const RVector& active_power, const RVector& theta);

}  // namespace pflin
