#include <unsupported/Eigen/MatrixFunctions>

#include "parabolic/numeric.hpp"

namespace parabolic {

namespace {

Eigen::VectorXd flatten(const CMatrix& m) {
  Eigen::VectorXd v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      v(k++) = m(r, c).real();
      v(k++) = m(r, c).imag();
    }
  return v;
}

}  // namespace

CMatrix to_complex(const QMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = {m(r, c).re.get_d(), m(r, c).im.get_d()};
  return out;
}

CMatrix to_complex(const AlgebraElement& y) { return to_complex(y.matrix()); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix exp_nilpotent(const CMatrix& m) {
  CMatrix out = CMatrix::Identity(m.rows(), m.cols());
  CMatrix term = out;
  for (Eigen::Index k = 1; k <= m.rows(); ++k) {
    term = term * m / static_cast<double>(k);
    out += term;
  }
  return out;
}

CMatrix log_unipotent(const CMatrix& u) {
  CMatrix n = u - CMatrix::Identity(u.rows(), u.cols());
  CMatrix out = CMatrix::Zero(u.rows(), u.cols());
  CMatrix power = CMatrix::Identity(u.rows(), u.cols());
  for (Eigen::Index k = 1; k <= u.rows(); ++k) {
    power = power * n;
    out += (k % 2 ? 1.0 : -1.0) / static_cast<double>(k) * power;
  }
  return out;
}

CMatrix expm(const CMatrix& m) { return m.exp(); }

RealChart::RealChart(const AlgebraHandle& algebra, int lo, int hi) : size_(algebra->ambient_size()) {
  std::vector<Eigen::VectorXd> cols;
  for (int d = lo; d <= hi; ++d)
    for (const auto& b : algebra->basis(d)) cols.push_back(flatten(to_complex(b)));
  basis_.resize(static_cast<Eigen::Index>(2 * size_ * size_), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis_.col(static_cast<Eigen::Index>(k)) = cols[k];
  qr_.compute(basis_);
}

Eigen::VectorXd RealChart::coordinates(const CMatrix& m, double* residual) const {
  Eigen::VectorXd v = flatten(m);
  Eigen::VectorXd c = qr_.solve(v);
  if (residual) *residual = (basis_ * c - v).cwiseAbs().maxCoeff();
  return c;
}

CMatrix RealChart::matrix(const Eigen::VectorXd& coords) const {
  Eigen::VectorXd v = basis_ * coords;
  auto n = static_cast<Eigen::Index>(size_);
  CMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = {v(2 * (r * n + c)), v(2 * (r * n + c) + 1)};
  return out;
}

}  // namespace parabolic
