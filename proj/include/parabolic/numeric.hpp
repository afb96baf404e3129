#pragma once

#include <Eigen/Dense>

#include "parabolic/lie_core.hpp"

namespace parabolic {

using CMatrix = Eigen::MatrixXcd;

CMatrix to_complex(const QMatrix& m);
CMatrix to_complex(const AlgebraElement& y);

/// Largest entry modulus.
double max_abs(const CMatrix& m);

/// Finite exponential series for a nilpotent matrix.
CMatrix exp_nilpotent(const CMatrix& m);
/// Finite logarithm series for a unipotent matrix.
CMatrix log_unipotent(const CMatrix& u);
/// Scaling-and-squaring Pade exponential for general arguments.
CMatrix expm(const CMatrix& m);

/// Real coordinates of complex matrices over the algebra basis of degrees lo..hi.
class RealChart {
 public:
  RealChart(const AlgebraHandle& algebra, int lo, int hi);

  std::size_t dimension() const { return static_cast<std::size_t>(basis_.cols()); }
  /// Least-squares coordinates; `residual` receives the distance to the span.
  Eigen::VectorXd coordinates(const CMatrix& m, double* residual = nullptr) const;
  CMatrix matrix(const Eigen::VectorXd& coords) const;

 private:
  std::size_t size_ = 0;
  Eigen::MatrixXd basis_;  // columns: real-flattened basis matrices
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
};

}  // namespace parabolic
