#pragma once

#include <string>
#include <vector>

#include "pflin/netmodel.hpp"
#include "pflin/types.hpp"

namespace pflin {

/// Largest row 2-norm: max_l sqrt(sum_k |a_lk|^2).
double dagger_norm(const CMatrix& a);
double dagger_norm(const RMatrix& a);

struct BoundCheck {
  std::string name;
  double actual = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// The neglected quadratic term of a linearization and its real/imaginary
/// splits, plus whatever a-priori bounds the caller attaches.
struct ResidualReport {
  CVector s_hot;
  RVector p_hot;
  RVector q_hot;
  double s_norm = 0.0;
  double p_norm = 0.0;
  double q_norm = 0.0;
  std::vector<BoundCheck> bounds;
};

/// diag(dV) conj(Y) conj(dV), evaluated twice: as a complex product and via
/// the expanded G/B real forms. Throws INTERNAL_CONSISTENCY if they disagree
/// by more than 1e-12 (scaled by max(1, ||Y||dagger ||dV||^2)).
ResidualReport compute_shot(const AdmittancePartition& p, const CVector& dv);

struct BoundInequalities {
  double lhs_quadratic = 0.0;  // ||diag(x) A x||
  double rhs_quadratic = 0.0;  // ||A||dagger ||x||^2
  double lhs_linear = 0.0;     // ||A x||
  double rhs_linear = 0.0;     // ||A||dagger ||x||
  bool both_hold = false;
};

/// Evaluates both norm bounds. Verdicts allow a 1e-12 relative rounding
/// margin so that tight cases (A = I) do not flip.
BoundInequalities verify_bounds(const CVector& x, const CMatrix& a);

/// diag(V)(conj(Y) conj(V) + conj(Ybar) conj(V_slack) - conj(I_L)) - S_target.
CVector nonlinear_mismatch(const AdmittancePartition& p, const CVector& voltage, const CVector& load_current,
                           Complex v_slack, const CVector& target);

/// Case-level form; targets come from `target_injections` (PV reactive rows
/// are compared against zero, callers mask them).
CVector nonlinear_mismatch(const AdmittancePartition& p, const CVector& voltage, const NetworkCase& c);

}  // namespace pflin
