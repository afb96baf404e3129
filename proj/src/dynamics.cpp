#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "parabolic/dynamics.hpp"
#include "parabolic/spectra.hpp"

namespace parabolic {

namespace {

Rational ipow(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1 / base) : base;
  for (long k = 0; k < std::labs(e); ++k) out *= b;
  return out;
}

/// Exact q^H for H diagonalizable with integer eigenvalues, by Lagrange interpolation over the spectrum.
std::optional<QMatrix> integer_power(const QMatrix& h, const Rational& q) {
  std::size_t n = h.rows();
  QMatrix id = QMatrix::identity(n);
  long bound = 0;
  for (std::size_t r = 0; r < n; ++r) {
    Rational row;
    for (std::size_t c = 0; c < n; ++c) row += abs(h(r, c).re) + abs(h(r, c).im);
    bound = std::max(bound, static_cast<long>(row.get_d()) + 1);
  }
  std::vector<long> spectrum;
  QMatrix annihilator = id;
  for (long l = -bound; l <= bound; ++l) {
    QMatrix shifted = h - Gauss(Rational(l)) * id;
    if (rank(shifted) == n) continue;
    spectrum.push_back(l);
    annihilator = annihilator * shifted;
  }
  if (!annihilator.is_zero()) return std::nullopt;
  QMatrix out(n, n);
  for (long lj : spectrum) {
    QMatrix term = Gauss(ipow(q, lj)) * id;
    for (long lk : spectrum)
      if (lk != lj) term = term * (Gauss(frac(1, lj - lk)) * (h - Gauss(Rational(lk)) * id));
    out += term;
  }
  return out;
}

Rational max_abs_exact(const QMatrix& m) {
  Rational out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational a = abs(m(r, c).re), b = abs(m(r, c).im);
      if (a > out) out = a;
      if (b > out) out = b;
    }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

ModelPoint chart_point(const CMatrix& y) { return {exp_nilpotent(y), y}; }

double group_residual(const AlgebraHandle& algebra, const CMatrix& g) {
  if (algebra->family() == Family::cr) {
    CMatrix h = to_complex(*algebra->ambient_form());
    return max_abs(g.adjoint() * h * g - h);
  }
  return std::abs(g.determinant() - 1.0);
}

NormalFactor factor_normal(const AlgebraHandle& algebra, const CMatrix& g) {
  const auto& blocks = algebra->block_partition();
  std::vector<Eigen::Index> off{0};
  for (auto b : blocks) off.push_back(off.back() + static_cast<Eigen::Index>(b));
  Eigen::Index n = off.back();
  CMatrix a = g;
  CMatrix l = CMatrix::Identity(n, n);
  for (std::size_t k = 0; k + 1 < blocks.size(); ++k) {
    Eigen::Index ok = off[k], sk = static_cast<Eigen::Index>(blocks[k]);
    CMatrix pivot = a.block(ok, ok, sk, sk);
    Eigen::JacobiSVD<CMatrix> svd(pivot);
    const auto& sv = svd.singularValues();
    double lo = sv(sv.size() - 1), hi = sv(0);
    if (!(lo > 0) || hi / lo > 1e12) throw Error(ErrorCode::outside_cell, "pivot block is singular or ill-conditioned");
    CMatrix inv = pivot.partialPivLu().inverse();
    for (std::size_t i = k + 1; i < blocks.size(); ++i) {
      Eigen::Index oi = off[i], si = static_cast<Eigen::Index>(blocks[i]);
      CMatrix lik = a.block(oi, ok, si, sk) * inv;
      l.block(oi, ok, si, sk) = lik;
      a.block(oi, 0, si, n) -= lik * a.block(ok, 0, sk, n);
      a.block(oi, ok, si, sk).setZero();
    }
  }
  NormalFactor out;
  out.y = log_unipotent(l);
  out.p = a;
  out.coords = RealChart(algebra, -algebra->depth(), -1).coordinates(out.y);
  out.reconstruction_residual = max_abs(exp_nilpotent(out.y) * out.p - g) / std::max(1.0, max_abs(g));
  return out;
}

CMatrix flow_point(const AlgebraElement& z, const CMatrix& y, double t) {
  CMatrix g = exp_nilpotent(t * to_complex(z)) * exp_nilpotent(y);
  return factor_normal(z.algebra(), g).y;
}

Sl2IdentityResidual verify_sl2_identity(const Sl2Triple& triple, const Rational& s, const Rational& t) {
  Rational q = 1 + s * t;
  if (sgn(q) <= 0) throw Error(ErrorCode::domain, "1 + st must be positive");
  Sl2IdentityResidual out;
  const QMatrix& z = triple.e.matrix();
  const QMatrix& x = triple.f.matrix();
  if (auto mid = integer_power(triple.h.matrix(), q)) {
    QMatrix lhs = exp_nilpotent(Gauss(t) * z) * exp_nilpotent(Gauss(s) * x);
    QMatrix rhs = exp_nilpotent(Gauss(Rational(s / q)) * x) * *mid * exp_nilpotent(Gauss(Rational(t / q)) * z);
    out.exact = true;
    out.exact_residual = max_abs_exact(lhs - rhs);
  }
  double sd = s.get_d(), td = t.get_d(), qd = 1 + sd * td;
  CMatrix cz = to_complex(z), cx = to_complex(x), ch = to_complex(triple.h);
  CMatrix lhs = exp_nilpotent(td * cz) * exp_nilpotent(sd * cx);
  CMatrix rhs = exp_nilpotent((sd / qd) * cx) * expm(std::log(qd) * ch) * exp_nilpotent((td / qd) * cz);
  out.residual = max_abs(lhs - rhs);
  return out;
}

ConvergenceRecord holonomy_convergence(const Sl2Triple& triple, double s, const std::vector<double>& schedule,
                                       double tolerance) {
  if (schedule.size() < 4) throw Error(ErrorCode::schedule_too_short, "need at least 4 times");
  if (s == 0) throw Error(ErrorCode::domain, "s must be nonzero");
  CMatrix cz = to_complex(triple.e), cx = to_complex(triple.f), ch = to_complex(triple.h);
  Eigen::Index n = cz.rows();
  CMatrix id = CMatrix::Identity(n, n);
  ConvergenceRecord out;
  out.s = s;
  out.tolerance = tolerance;
  for (double t : schedule) {
    double q = 1 + s * t;
    if (!(q > 0)) throw Error(ErrorCode::domain, "1 + st must be positive along the schedule");
    CMatrix b = exp_nilpotent(s * cx) * exp_nilpotent((-t / q) * cz);
    CMatrix frame = exp_nilpotent(t * cz) * b * expm(-std::log(q) * ch);
    out.times.push_back(t);
    out.distances.push_back(max_abs(frame - id));
    out.predicted.push_back(max_abs(exp_nilpotent((s / q) * cx) - id));
  }
  bool monotone = true;
  for (std::size_t i = out.distances.size() / 2; i + 1 < out.distances.size(); ++i)
    if (out.distances[i + 1] > out.distances[i]) monotone = false;
  out.verdict = monotone && out.distances.back() <= tolerance ? "monotone-decreasing-to-zero" : "not-converged";
  return out;
}

PropagationRecord propagate_holonomy(const Sl2Triple& triple, double s, const AlgebraElement& y, double t_end,
                                     double tolerance) {
  const auto& alg = y.algebra();
  if (!y.in_g_minus()) throw Error(ErrorCode::not_in_g_minus, "Y must lie in g-");
  double q = 1 + s * t_end;
  if (!(q > 0)) throw Error(ErrorCode::domain, "1 + st must be positive");
  auto rep = TensorRep::adjoint(alg, -alg->depth(), -1);
  auto dec = eigendecompose(triple.h, rep);
  std::size_t dim = rep.dimension();
  RatMatrix basis(dim, dim);
  std::vector<Rational> labels;
  for (const auto& p : dec.pairs)
    for (const auto& v : p.basis) {
      for (const auto& [i, x] : v) basis(i, labels.size()) = x;
      labels.push_back(p.eigenvalue);
    }
  auto coeffs = solve(basis, to_dense(adjoint_vector(rep, y), dim));
  if (!coeffs) throw std::logic_error("eigenbasis does not span g-");
  SparseVec limit;
  std::size_t k = 0;
  for (const auto& p : dec.pairs)
    for (const auto& v : p.basis) {
      const Rational& c = (*coeffs)[k++];
      if (sgn(c) == 0) continue;
      if (sgn(p.eigenvalue) > 0)
        throw Error(ErrorCode::divergent_adjoint, "Y has a component of eigenvalue " + to_string(p.eigenvalue));
      if (sgn(p.eigenvalue) == 0) limit = add_scaled(limit, v, c);
    }
  PropagationRecord out{adjoint_element(rep, limit)};
  out.t_end = t_end;
  out.tolerance = tolerance;
  CMatrix cz = to_complex(triple.e), cx = to_complex(triple.f), ch = to_complex(triple.h), cy = to_complex(y);
  CMatrix g = expm(std::log(q) * ch), ginv = expm(-std::log(q) * ch);
  CMatrix b = exp_nilpotent(s * cx) * exp_nilpotent((-t_end / q) * cz);
  CMatrix frame = exp_nilpotent(t_end * cz) * b * exp_nilpotent(cy) * ginv;
  CMatrix cinf = to_complex(out.y_infinity);
  out.frame_residual = max_abs(frame - exp_nilpotent(cinf));
  out.adjoint_residual = max_abs(g * cy * ginv - cinf);
  out.converged = out.frame_residual <= tolerance;
  return out;
}

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::fixed: return "fixed";
    case PointClass::strongly_fixed: return "strongly-fixed";
    case PointClass::moving: return "moving";
    case PointClass::outside_cell: return "outside-cell";
  }
  return "moving";
}

FixedSetScan fixed_set_scan(const AlgebraElement& z, const std::vector<AlgebraElement>& grid, double t_probe,
                            double tolerance) {
  const auto& alg = z.algebra();
  auto type = classify(z);
  auto comm = commutant(z);
  FixedSetScan out;
  for (const auto& y : grid) {
    if (!y.in_g_minus()) throw Error(ErrorCode::not_in_g_minus, "grid points must lie in g-");
    bool in_f = in_normalizing_set(z, y);
    bool in_c = comm.contains(y);
    PointClass cls = PointClass::moving;
    try {
      CMatrix cy = to_complex(y);
      if (max_abs(flow_point(z, cy, t_probe) - cy) <= tolerance) {
        cls = PointClass::fixed;
        auto w = AlgebraElement::trusted(alg, exp_nilpotent(-y.matrix()) * z.matrix() * exp_nilpotent(y.matrix()));
        if (w.in_p_plus() && classify(w) == type) cls = PointClass::strongly_fixed;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::outside_cell) throw;
      cls = PointClass::outside_cell;
    }
    out.classes.push_back(cls);
    switch (cls) {
      case PointClass::fixed: ++out.fixed; break;
      case PointClass::strongly_fixed: ++out.strongly_fixed; break;
      case PointClass::moving: ++out.moving; break;
      case PointClass::outside_cell: ++out.outside_cell; break;
    }
    bool is_fixed = cls == PointClass::fixed || cls == PointClass::strongly_fixed;
    if (in_f) {
      ++out.f_members;
      if (is_fixed) ++out.f_members_fixed;
    }
    if (in_c) {
      ++out.commutant_members;
      if (cls == PointClass::strongly_fixed) ++out.commutant_strongly_fixed;
    }
    if (cls == PointClass::strongly_fixed && !in_c) ++out.strongly_fixed_outside_commutant;
  }
  return out;
}

namespace {

/// g_{-1} elements Y with ZY = 0 as a slot (cr) or block product.
std::vector<AlgebraElement> product_kernel(const AlgebraElement& z) {
  const auto& alg = z.algebra();
  if (alg->family() == Family::sl2 || !z.in_degree(1) || z.is_zero()) return {};
  bool cr = alg->family() == Family::cr;
  const auto& basis = alg->basis(-1);
  std::vector<QMatrix> images;
  for (const auto& b : basis) {
    auto y = AlgebraElement::trusted(alg, b);
    if (cr) {
      images.push_back(cr_slot(z) * cr_slot(y));
    } else {
      const auto& parts = alg->block_partition();
      images.push_back(offdiagonal_block(z) * b.block(parts[0], 0, parts[1], parts[0]));
    }
  }
  std::size_t entries = images[0].rows() * images[0].cols();
  RatMatrix m(2 * entries, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t k = 0; k < entries; ++k) {
      const Gauss& g = images[c](k / images[c].cols(), k % images[c].cols());
      m(2 * k, c) = g.re;
      m(2 * k + 1, c) = g.im;
    }
  std::vector<AlgebraElement> out;
  for (const auto& v : kernel(m)) out.push_back(AlgebraElement::from_coordinates(alg, -1, v));
  return out;
}

}  // namespace

std::vector<AlgebraElement> scan_grid(const AlgebraElement& z, std::size_t size, std::uint64_t seed) {
  const auto& alg = z.algebra();
  std::mt19937_64 rng(seed);
  auto comm = commutant(z).basis;
  auto ker = product_kernel(z);
  std::optional<AlgebraElement> x;
  try {
    x = jacobson_morozov(z).f;
  } catch (const Error&) {
  }
  auto combo = [&](const std::vector<AlgebraElement>& from) {
    AlgebraElement acc = AlgebraElement::zero(alg);
    for (const auto& b : from) acc += random_rational(rng, 2) * b;
    return acc;
  };
  std::vector<AlgebraElement> grid{AlgebraElement::zero(alg)};
  while (grid.size() < size) {
    switch (grid.size() % 5) {
      case 0:
        if (!comm.empty()) {
          grid.push_back(combo(comm));
          if (alg->family() == Family::cr && grid.size() < size) grid.push_back(complex_structure(comm[rng() % comm.size()]));
          break;
        }
        [[fallthrough]];
      case 1:
        if (!ker.empty()) {
          grid.push_back(rng() % 2 ? ker[rng() % ker.size()] : combo(ker));
          break;
        }
        [[fallthrough]];
      case 2:
        if (x) {
          grid.push_back(random_rational(rng, 3) * *x);
          break;
        }
        [[fallthrough]];
      default:
        grid.push_back(frac(1, 2) * random_element(alg, -alg->depth(), -1, rng, 1));
    }
  }
  if (grid.size() > size) grid.erase(grid.begin() + static_cast<std::ptrdiff_t>(size), grid.end());
  return grid;
}

TrajectoryReport ray_flow(const AlgebraElement& z, const AlgebraElement& x, const std::vector<double>& scales,
                          const std::vector<double>& times) {
  const auto& alg = z.algebra();
  RealChart chart(alg, -alg->depth(), -1);
  CMatrix cx = to_complex(x);
  TrajectoryReport out;
  for (double s : scales)
    for (double t : times) {
      CMatrix sim;
      try {
        sim = flow_point(z, s * cx, t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::outside_cell) throw;
        ++out.outside_cell;
        continue;
      }
      Eigen::VectorXd p = chart.coordinates((s / (1 + s * t)) * cx);
      Eigen::VectorXd q = chart.coordinates(sim);
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        TrajectorySample sample{s, t, static_cast<std::size_t>(k), p(k), q(k), std::abs(p(k) - q(k))};
        out.max_residual = std::max(out.max_residual, sample.residual);
        out.samples.push_back(sample);
      }
    }
  return out;
}

double semigroup_residual(const AlgebraElement& z, const std::vector<CMatrix>& points,
                          const std::vector<std::pair<double, double>>& times) {
  double worst = 0;
  for (const auto& y : points)
    for (auto [t, u] : times)
      worst = std::max(worst, max_abs(flow_point(z, flow_point(z, y, t), u) - flow_point(z, y, t + u)));
  return worst;
}

void write_csv(std::ostream& out, const TrajectoryReport& report) {
  out << "s,t,coord-index,predicted,simulated,residual\n";
  for (const auto& s : report.samples)
    out << fmt(s.s) << ',' << fmt(s.t) << ',' << s.coord << ',' << fmt(s.predicted) << ',' << fmt(s.simulated) << ','
        << fmt(s.residual) << '\n';
}

ClosedFormProbe rank2_closed_form_probe(const AlgebraElement& z, const AlgebraElement& x,
                                        const std::vector<double>& scales, const std::vector<double>& times,
                                        double tolerance) {
  CMatrix cz = to_complex(z), cx = to_complex(x);
  ClosedFormProbe out;
  for (double s : scales)
    for (double t : times) {
      CMatrix xi = s * cx;
      double tr = (cz * xi).trace().real();
      CMatrix sim = flow_point(z, xi, t);
      out.two_over_residual = std::max(out.two_over_residual, max_abs(sim - (2 / (2 + t * tr)) * xi));
      out.one_over_residual = std::max(out.one_over_residual, max_abs(sim - (1 / (2 + t * tr)) * xi));
    }
  bool d = out.two_over_residual <= tolerance, p = out.one_over_residual <= tolerance;
  out.matching = d && p ? "both" : d ? "2/(2+t*tr)" : p ? "1/(2+t*tr)" : "neither";
  return out;
}

}  // namespace parabolic
