#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "parabolic/spectra.hpp"

namespace parabolic {

namespace {

using Groups = std::map<Rational, std::vector<SparseVec>, std::greater<Rational>>;

Groups scan(const AlgebraElement& a, const TensorRep& rep) {
  RatMatrix m = rep.action(a).to_dense();
  std::size_t n = rep.dimension();
  Rational bound;
  for (std::size_t r = 0; r < n; ++r) {
    Rational row;
    for (std::size_t c = 0; c < n; ++c) row += abs(m(r, c));
    if (row > bound) bound = row;
  }
  long b = static_cast<long>(mpz_class(bound.get_num() / bound.get_den()).get_si());
  std::vector<Rational> candidates;
  std::set<Rational> seen;
  auto add = [&](const Rational& mu) {
    if (seen.insert(mu).second) candidates.push_back(mu);
  };
  for (std::size_t i = 0; i < n; ++i) add(m(i, i));
  for (long k = 0; k <= 2 * b; ++k) {
    add(frac(k, 2));
    add(frac(-k, 2));
  }
  Groups out;
  std::size_t found = 0;
  for (const auto& mu : candidates) {
    if (found == n) break;
    RatMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mu;
    auto ker = kernel(shifted);
    if (ker.empty()) continue;
    found += ker.size();
    for (auto& v : ker) out[mu].push_back(to_sparse(v));
  }
  return out;
}

struct Flat {
  Rational mu;
  SparseVec v;
};

std::vector<Flat> flatten(const Groups& g) {
  std::vector<Flat> out;
  for (const auto& [mu, vs] : g)
    for (const auto& v : vs) out.push_back({mu, v});
  return out;
}

Groups compose(const AlgebraElement& a, const TensorRep& rep) {
  switch (rep.kind()) {
    case RepKind::tensor: {
      auto ga = compose(a, rep.factors()[0]);
      auto gb = compose(a, rep.factors()[1]);
      std::size_t db = rep.factors()[1].dimension();
      Groups out;
      for (const auto& [ma, va] : ga)
        for (const auto& [mb, vb] : gb)
          for (const auto& x : va)
            for (const auto& y : vb) out[ma + mb].push_back(kron(x, y, db));
      return out;
    }
    case RepKind::exterior_square:
    case RepKind::symmetric_square: {
      auto f = flatten(compose(a, rep.factors()[0]));
      std::size_t d = rep.factors()[0].dimension();
      bool ext = rep.kind() == RepKind::exterior_square;
      Groups out;
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = ext ? i + 1 : i; j < f.size(); ++j)
          out[f[i].mu + f[j].mu].push_back(ext ? wedge(f[i].v, f[j].v, d) : symmetric_product(f[i].v, f[j].v, d));
      return out;
    }
    default:
      return scan(a, rep);
  }
}

double norm_of(const Eigen::VectorXd& v) { return v.norm(); }

}  // namespace

SparseVec embed_factor(const TensorRep& tensor, const SparseVec& v, std::size_t which) {
  if (tensor.kind() != RepKind::tensor || which > 1 || tensor.factors()[which].kind() != RepKind::sub)
    throw Error(ErrorCode::invalid_params, "embed_factor needs a tensor rep with a sub factor");
  const auto& a = tensor.factors()[0];
  const auto& b = tensor.factors()[1];
  std::size_t db = b.dimension();
  std::size_t pd = which == 1 ? b.factors()[0].dimension() : 0;
  std::map<std::size_t, Rational> acc;
  for (const auto& [idx, x] : v) {
    std::size_t i = idx / db, j = idx % db;
    if (which == 0) {
      for (const auto& [p, c] : a.sub_basis()[i]) acc[p * db + j] += x * c;
    } else {
      for (const auto& [p, c] : b.sub_basis()[j]) acc[i * pd + p] += x * c;
    }
  }
  SparseVec out;
  for (auto& [k, x] : acc)
    if (sgn(x) != 0) out.emplace_back(k, x);
  return out;
}

std::vector<Rational> EigenDecomposition::eigenvalues() const {
  std::vector<Rational> out;
  for (const auto& p : pairs) out.push_back(p.eigenvalue);
  return out;
}

const Eigenspace* EigenDecomposition::find(const Rational& mu) const {
  for (const auto& p : pairs)
    if (p.eigenvalue == mu) return &p;
  return nullptr;
}

EigenDecomposition eigendecompose(const AlgebraElement& a, const TensorRep& rep) {
  if (!a.in_degree(0)) throw Error(ErrorCode::invalid_params, "eigendecompose expects a g_0 element");
  auto groups = compose(a, rep);
  SparseMatrix rho = rep.action(a);
  EigenDecomposition out;
  out.dimension = rep.dimension();
  std::size_t total = 0;
  for (auto& [mu, vs] : groups) {
    for (const auto& v : vs)
      if (rho.apply(v) != scaled(v, mu))
        throw Error(ErrorCode::not_diagonalizable, "eigenvector check failed in " + rep.name());
    total += vs.size();
    out.pairs.push_back({mu, std::move(vs)});
  }
  if (total != rep.dimension())
    throw Error(ErrorCode::not_diagonalizable, "eigenspaces of " + rep.name() + " span " + std::to_string(total) +
                                                   " of " + std::to_string(rep.dimension()) + " dimensions");
  return out;
}

bool RepSubspace::contains(const SparseVec& v) const { return span_of(ambient, basis).contains(v); }

bool RepSubspace::contains(const RepSubspace& other) const {
  Span s = span_of(ambient, basis);
  return std::all_of(other.basis.begin(), other.basis.end(), [&](const SparseVec& v) { return s.contains(v); });
}

bool RepSubspace::operator==(const RepSubspace& other) const {
  return ambient == other.ambient && dimension() == other.dimension() && contains(other);
}

RepSubspace rep_span(std::size_t ambient, const std::vector<SparseVec>& vectors) {
  RepSubspace out{ambient, {}};
  Span s(ambient);
  for (const auto& v : vectors)
    if (s.insert(v)) out.basis.push_back(v);
  return out;
}

RepSubspace rep_sum(const RepSubspace& a, const RepSubspace& b) {
  auto all = a.basis;
  all.insert(all.end(), b.basis.begin(), b.basis.end());
  return rep_span(a.ambient, all);
}

RepSubspace rep_intersection(const RepSubspace& a, const RepSubspace& b) {
  return RepSubspace{a.ambient, intersect(a.ambient, a.basis, b.basis)};
}

StableSubspaces stable_subspaces(const EigenDecomposition& decomp) {
  StableSubspaces out{{decomp.dimension, {}}, {decomp.dimension, {}}};
  for (const auto& p : decomp.pairs) {
    if (sgn(p.eigenvalue) <= 0)
      out.stable.basis.insert(out.stable.basis.end(), p.basis.begin(), p.basis.end());
    if (sgn(p.eigenvalue) < 0)
      out.strongly_stable.basis.insert(out.strongly_stable.basis.end(), p.basis.begin(), p.basis.end());
  }
  return out;
}

RepSubspace eigenspace(const EigenDecomposition& decomp, const Rational& mu) {
  const Eigenspace* e = decomp.find(mu);
  return RepSubspace{decomp.dimension, e ? e->basis : std::vector<SparseVec>{}};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::vanishes_on_curve: return "vanishes-on-curve";
    case Verdict::vanishes_if_zero_at_fixed_point: return "vanishes-if-zero-at-fixed-point";
    case Verdict::vanishes_on_open_neighborhood: return "vanishes-on-open-neighborhood";
    case Verdict::no_conclusion: return "no-conclusion";
  }
  return "no-conclusion";
}

bool negative_part_condition(const AlgebraElement& z, const Sl2Triple& triple) {
  const auto& alg = z.algebra();
  auto rep = build_rep(alg, "adjoint-negative");
  auto d = eigendecompose(triple.h, rep);
  for (const auto& p : d.pairs)
    if (sgn(p.eigenvalue) > 0) return false;
  std::vector<SparseVec> comm;
  for (const auto& c : commutant(z).basis) comm.push_back(adjoint_vector(rep, c));
  return eigenspace(d, Rational(0)) == rep_span(rep.dimension(), comm);
}

FlatnessVerdict flatness_verdict(const AlgebraElement& z, const Sl2Triple& triple) {
  if (!is_sl2_triple(triple) || triple.e != z) throw Error(ErrorCode::invalid_params, "triple does not complete Z");
  if (!triple.h.in_degree(0)) throw Error(ErrorCode::invalid_params, "H must lie in g_0");
  const auto& alg = z.algebra();
  std::vector<std::string> names = alg->family() == Family::cr
                                       ? std::vector<std::string>{"cr-torsion-ambient", "cr-curvature-ambient"}
                                       : std::vector<std::string>{"torsion-ambient", "curvature-ambient"};
  bool cond = negative_part_condition(z, triple);
  bool isolated = commutant(z).dimension() == 0;
  FlatnessVerdict out;
  for (const auto& name : names) {
    RepVerdict v;
    v.rep = name;
    v.decomposition = eigendecompose(triple.h, build_rep(alg, name));
    v.stable = stable_subspaces(v.decomposition);
    v.negative_part_condition = cond;
    v.fixed_point_constraints = v.stable.stable.basis;
    if (v.stable.stable.dimension() == 0) {
      v.verdict = Verdict::vanishes_on_curve;
    } else if (v.stable.strongly_stable.dimension() == 0) {
      v.verdict = cond && !isolated ? Verdict::vanishes_on_open_neighborhood : Verdict::vanishes_if_zero_at_fixed_point;
    }
    out.reps.push_back(std::move(v));
  }
  return out;
}

GrowthReport semisimple_growth(const AlgebraElement& z0, const TensorRep& rep) {
  if (!z0.in_degree(0)) throw Error(ErrorCode::invalid_params, "semisimple_growth expects a g_0 element");
  const auto& alg = z0.algebra();
  auto a0 = grading_element(alg);
  Gauss num = (z0.matrix() * a0.matrix()).trace();
  Gauss den = (a0.matrix() * a0.matrix()).trace();
  GrowthReport out;
  out.c = num.re / den.re;
  auto k = z0 - out.c * a0;

  RatMatrix rk = rep.action(k).to_dense();
  std::size_t n = rep.dimension();
  Eigen::MatrixXd m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rk(r, c).get_d();
  Eigen::MatrixXd step = (0.5 * m).exp();
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
  double worst = 1.0;
  auto record = [&](const Eigen::MatrixXd& g) {
    for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, norm_of(g.col(c)));
  };
  std::vector<Eigen::MatrixXd> powers;
  Eigen::MatrixXd p = step;
  for (int i = 0; i < 8; ++i) {  // t = 0.5, 1, 2, ..., 64
    record(p);
    powers.push_back(p);
    p = p * p;
  }
  e = powers[7] * powers[6] * powers[3];  // t = 64 + 32 + 4
  record(e);
  out.compact_orbit_bound = worst;
  if (!(worst <= 10.0)) throw Error(ErrorCode::unbounded_compact_part, "compact part leaves 10x the basis norm");

  auto d = eigendecompose(a0, rep);
  int pos = 0, neg = 0, zero = 0;
  for (const auto& pr : d.pairs) {
    GrowthComponent g;
    g.homogeneity = pr.eigenvalue;
    g.dimension = pr.basis.size();
    g.rate = out.c * pr.eigenvalue;
    int s = sgn(g.rate);
    g.verdict = s > 0 ? "expanding" : (s < 0 ? "contracting" : "bounded");
    (s > 0 ? pos : (s < 0 ? neg : zero)) += 1;
    out.components.push_back(g);
  }
  std::size_t parts = out.components.size();
  if (pos == static_cast<int>(parts)) out.verdict = "expanding";
  else if (neg == static_cast<int>(parts)) out.verdict = "contracting";
  else if (zero == static_cast<int>(parts)) out.verdict = "bounded";
  else out.verdict = "mixed";
  return out;
}

}  // namespace parabolic
