#pragma once

#include <cmath>

#include <Eigen/LU>

#include "pflin/types.hpp"

namespace pflin {

/// Smallest-to-largest pivot ratio below which a factorization is treated
/// as singular.
inline constexpr double kPivotRatioThreshold = 1e-12;

/// Partial-pivoting LU with an explicit singularity verdict and a 1-norm
/// reciprocal condition estimate. The estimate is reported only; the pivot
/// ratio alone decides singularity.
template <typename Matrix>
class DenseLu {
 public:
  using Vector = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, 1>;

  explicit DenseLu(const Matrix& a) : lu_(a) {
    const auto diag = lu_.matrixLU().diagonal().cwiseAbs();
    const double max_pivot = diag.size() > 0 ? diag.maxCoeff() : 0.0;
    const double min_pivot = diag.size() > 0 ? diag.minCoeff() : 0.0;
    pivot_ratio_ = max_pivot > 0.0 ? min_pivot / max_pivot : 0.0;
    if (std::isfinite(pivot_ratio_) && pivot_ratio_ >= kPivotRatioThreshold) {
      rcond_ = lu_.rcond();
    }
  }

  bool singular() const { return !(pivot_ratio_ >= kPivotRatioThreshold); }
  double pivot_ratio() const { return pivot_ratio_; }
  double rcond() const { return rcond_; }

  Vector solve(const Vector& rhs) const { return lu_.solve(rhs); }
  Matrix inverse() const { return lu_.inverse(); }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double pivot_ratio_ = 0.0;
  double rcond_ = 0.0;
};

using ComplexLu = DenseLu<CMatrix>;
using RealLu = DenseLu<RMatrix>;

}  // namespace pflin
