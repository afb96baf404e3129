#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/isotropy.hpp"
#include "parabolic/numeric.hpp"

namespace parabolic {

/// A coset gP of the flat model, optionally with its normal coordinates.
struct ModelPoint {
  CMatrix group_matrix;
  std::optional<CMatrix> normal_coords;
};

ModelPoint chart_point(const CMatrix& y);
/// |det g - 1| for unimodular families, max |g* H g - H| for cr.
double group_residual(const AlgebraHandle& algebra, const CMatrix& g);

struct NormalFactor {
  CMatrix y;
  CMatrix p;
  Eigen::VectorXd coords;
  /// max |exp(Y) p - g| / max(1, max |g|)
  double reconstruction_residual = 0;
};

/// g = exp(Y) p by block LU over the block partition; throws outside-cell when a pivot
/// block is singular or has condition number above 1e12.
NormalFactor factor_normal(const AlgebraHandle& algebra, const CMatrix& g);

/// The g- factor of exp(tZ) exp(Y).
CMatrix flow_point(const AlgebraElement& z, const CMatrix& y, double t);

struct Sl2IdentityResidual {
  bool exact = false;
  Rational exact_residual;
  double residual = 0;
};

/// Both sides of exp(tZ)exp(sX) = exp(s/(1+st) X) exp(log(1+st) H) exp(t/(1+st) Z).
/// Exact whenever H is diagonalizable with integer eigenvalues; the float residual is always filled.
Sl2IdentityResidual verify_sl2_identity(const Sl2Triple& triple, const Rational& s, const Rational& t);

struct ConvergenceRecord {
  double s = 0;
  std::vector<double> times;
  std::vector<double> distances;
  /// |exp(s/(1+st) X) - 1| at each time.
  std::vector<double> predicted;
  double tolerance = 0;
  std::string verdict;
};

/// d(t) = |exp(tZ) b(t) g(t)^{-1} - 1| with b(t) = exp(sX) exp(-t/(1+st) Z), g(t) = exp(log(1+st) H).
ConvergenceRecord holonomy_convergence(const Sl2Triple& triple, double s, const std::vector<double>& schedule,
                                       double tolerance = 1e-6);

struct PropagationRecord {
  AlgebraElement y_infinity;
  double t_end = 0;
  /// |exp(tZ) b(t) exp(Y) g(t)^{-1} - exp(Y_inf)| at t_end.
  double frame_residual = 0;
  /// |Ad(g(t_end)) Y - Y_inf|.
  double adjoint_residual = 0;
  double tolerance = 0;
  bool converged = false;
};

/// Throws divergent-adjoint when Y has a component of positive ad(H)-eigenvalue.
PropagationRecord propagate_holonomy(const Sl2Triple& triple, double s, const AlgebraElement& y, double t_end,
                                     double tolerance = 1e-6);

enum class PointClass { fixed, strongly_fixed, moving, outside_cell };
const char* point_class_name(PointClass c);

struct FixedSetScan {
  std::vector<PointClass> classes;
  std::size_t fixed = 0;
  std::size_t strongly_fixed = 0;
  std::size_t moving = 0;
  std::size_t outside_cell = 0;
  std::size_t f_members = 0;
  std::size_t f_members_fixed = 0;
  std::size_t commutant_members = 0;
  std::size_t commutant_strongly_fixed = 0;
  std::size_t strongly_fixed_outside_commutant = 0;
};

/// Fixed: |flow_point(Z, Y, t_probe) - Y| <= tol. Strongly fixed: fixed, and Ad(exp(-Y)) Z lies in
/// p+ with the same geometric type as Z (computed exactly).
FixedSetScan fixed_set_scan(const AlgebraElement& z, const std::vector<AlgebraElement>& grid, double t_probe,
                            double tolerance = 1e-8);

/// Deterministic g- grid: the base point, commutant combinations, points with ZX = 0 (inside F
/// for every family but cr, where the null ones are), counterpart ray points and small random points.
std::vector<AlgebraElement> scan_grid(const AlgebraElement& z, std::size_t size, std::uint64_t seed);

struct TrajectorySample {
  double s = 0;
  double t = 0;
  std::size_t coord = 0;
  double predicted = 0;
  double simulated = 0;
  double residual = 0;
};

struct TrajectoryReport {
  std::vector<TrajectorySample> samples;
  double max_residual = 0;
  std::size_t outside_cell = 0;
};

/// Simulated flow of s X against s/(1+st) X, per real g- coordinate.
TrajectoryReport ray_flow(const AlgebraElement& z, const AlgebraElement& x, const std::vector<double>& scales,
                          const std::vector<double>& times);
/// max over samples of |flow(flow(Y,t),u) - flow(Y,t+u)|.
double semigroup_residual(const AlgebraElement& z, const std::vector<CMatrix>& points,
                          const std::vector<std::pair<double, double>>& times);

/// Header row then one line per sample, floats with 17 significant digits.
void write_csv(std::ostream& out, const TrajectoryReport& report);

struct ClosedFormProbe {
  /// max |flow(xi, t) - k xi| for k = 2/(2 + t tr(Z xi)) and k = 1/(2 + t tr(Z xi)).
  double two_over_residual = 0;
  double one_over_residual = 0;
  std::string matching;
};

/// Flow of xi = lambda X (X a counterpart of a rank-2 Z) against the two closed forms.
ClosedFormProbe rank2_closed_form_probe(const AlgebraElement& z, const AlgebraElement& x,
                                        const std::vector<double>& scales, const std::vector<double>& times,
                                        double tolerance = 1e-8);

}  // namespace parabolic
