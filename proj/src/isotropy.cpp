#include "parabolic/isotropy.hpp"

#include <algorithm>
#include <functional>

namespace parabolic {

namespace {

std::vector<QMatrix> basis_range(const GradedAlgebra& alg, int lo, int hi) {
  std::vector<QMatrix> out;
  for (int d = lo; d <= hi; ++d)
    for (const auto& b : alg.basis(d)) out.push_back(b);
  return out;
}

std::vector<Rational> full_coords(const GradedAlgebra& alg, const QMatrix& m) {
  auto c = alg.coordinates(m);
  if (!c) throw std::logic_error("matrix left the algebra");
  return *c;
}

/// Matrix of a linear map on span(domain) written in full coordinates; several maps are stacked.
RatMatrix stacked_map(const GradedAlgebra& alg, const std::vector<QMatrix>& domain,
                      const std::vector<std::function<QMatrix(const QMatrix&)>>& maps) {
  std::size_t dim = alg.dim();
  RatMatrix out(dim * maps.size(), domain.size());
  for (std::size_t j = 0; j < domain.size(); ++j)
    for (std::size_t k = 0; k < maps.size(); ++k) {
      auto c = full_coords(alg, maps[k](domain[j]));
      for (std::size_t r = 0; r < dim; ++r) out(k * dim + r, j) = c[r];
    }
  return out;
}

QMatrix combine(const std::vector<QMatrix>& domain, const std::vector<Rational>& coeffs, std::size_t n) {
  QMatrix out(n, n);
  for (std::size_t j = 0; j < domain.size(); ++j)
    if (sgn(coeffs[j]) != 0) out += Gauss(coeffs[j]) * domain[j];
  return out;
}

void require_p_plus(const AlgebraElement& z) {
  if (!z.in_p_plus()) throw Error(ErrorCode::not_in_p_plus, "isotropy must lie in p+");
}

void require_nonzero(const AlgebraElement& z) {
  if (z.is_zero()) throw Error(ErrorCode::zero_input, "isotropy is zero");
}

AlgebraElement g_minus_part(const AlgebraElement& y) {
  auto out = AlgebraElement::zero(y.algebra());
  for (int d = -y.algebra()->depth(); d <= -1; ++d) out += grading_component(y, d);
  return out;
}

/// Row rank factorization Z = C F of a real matrix: C the pivot columns, F the nonzero rref rows.
std::pair<QMatrix, QMatrix> rank_factor(const QMatrix& z) {
  RatMatrix r(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) r(i, j) = z(i, j).re;
  auto pivots = rref(r);
  QMatrix c(z.rows(), pivots.size()), f(pivots.size(), z.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    for (std::size_t i = 0; i < z.rows(); ++i) c(i, k) = z(i, pivots[k]);
    for (std::size_t j = 0; j < z.cols(); ++j) f(k, j) = r(k, j);
  }
  return {c, f};
}

QMatrix pseudo_inverse_real(const QMatrix& z) {
  auto [c, f] = rank_factor(z);
  auto ffi = inverse(f * f.transpose());
  auto cci = inverse(c.transpose() * c);
  return f.transpose() * *ffi * *cci * c.transpose();
}

Gauss scalar_of(const QMatrix& m) { return m(0, 0); }

/// r-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < n; ++k) {
      cur.push_back(k);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Columns e_S, and e_S shifted by half of the first standard vector outside S.
std::vector<QMatrix> frame_grid(std::size_t n, std::size_t r) {
  std::vector<QMatrix> out;
  for (const auto& s : subsets(n, r)) {
    QMatrix w(n, r);
    for (std::size_t k = 0; k < r; ++k) w(s[k], k) = 1;
    out.push_back(w);
  }
  std::size_t plain = out.size();
  for (std::size_t idx = 0; idx < plain; ++idx) {
    auto s = subsets(n, r)[idx];
    std::size_t extra = n;
    for (std::size_t k = 0; k < n; ++k)
      if (std::find(s.begin(), s.end(), k) == s.end()) {
        extra = k;
        break;
      }
    if (extra == n) continue;
    QMatrix w = out[idx];
    for (std::size_t k = 0; k < r; ++k) w(extra, k) += Gauss(frac(static_cast<long>(k) + 1, 2));
    out.push_back(w);
  }
  return out;
}

bool contains_matrix(const std::vector<AlgebraElement>& xs, const QMatrix& m) {
  return std::any_of(xs.begin(), xs.end(), [&](const AlgebraElement& x) { return x.matrix() == m; });
}

std::vector<AlgebraElement> grassmannian_sample(const AlgebraElement& z, const CounterpartParams& params) {
  const auto& alg = z.algebra();
  QMatrix zb = offdiagonal_block(z);
  std::size_t m = zb.rows(), n = zb.cols();
  std::size_t r = rank(zb);

  auto build = [&](const QMatrix& w, const QMatrix& psi) -> std::optional<AlgebraElement> {
    auto inv = inverse(psi * zb * w);
    if (!inv) return std::nullopt;
    auto x = from_offdiagonal_block(alg, -1, w * *inv * psi);
    if (!in_counterpart_set(z, x)) return std::nullopt;
    return x;
  };

  if (params.complement) {
    if (r != m) throw Error(ErrorCode::invalid_params, "a complement parametrizes full-rank isotropies only");
    const QMatrix& w = *params.complement;
    if (w.rows() != n || w.cols() != m) throw Error(ErrorCode::invalid_params, "complement must be n x m");
    auto x = build(w, QMatrix::identity(m));
    if (!x) throw Error(ErrorCode::empty, "complement is not transversal to ker Z");
    return {*x};
  }
  if (params.kernel_line || params.image_line) {
    if (!params.kernel_line || !params.image_line)
      throw Error(ErrorCode::invalid_params, "line pairs need both kernel_line and image_line");
    if (r != 1 || m != 2) throw Error(ErrorCode::invalid_params, "line pairs parametrize rank-one isotropies in L(R^n, R^2)");
    const QMatrix& v = *params.kernel_line;
    const QMatrix& w = *params.image_line;
    if (v.rows() != m || v.cols() != 1 || w.rows() != n || w.cols() != 1)
      throw Error(ErrorCode::invalid_params, "line shapes must be m x 1 and n x 1");
    QMatrix psi(1, 2);
    psi(0, 0) = -v(1, 0);
    psi(0, 1) = v(0, 0);
    auto x = build(w, psi);
    if (!x) throw Error(ErrorCode::empty, "line pair is not transversal to Z");
    return {*x};
  }

  std::vector<AlgebraElement> out;
  auto psis = r == m ? std::vector<QMatrix>{QMatrix::identity(m)} : std::vector<QMatrix>{};
  if (r != m)
    for (const auto& col : frame_grid(m, r)) psis.push_back(col.transpose());
  auto frames = frame_grid(n, r);
  for (const auto& psi : psis)
    for (const auto& w : frames) {
      if (out.size() >= params.count) return out;
      auto x = build(w, psi);
      if (x && !contains_matrix(out, x->matrix())) out.push_back(*x);
    }
  if (out.empty()) throw Error(ErrorCode::empty, "no transversal frame in the grid");
  return out;
}

std::vector<AlgebraElement> quaternionic_sample(const AlgebraElement& z, const CounterpartParams& params) {
  const auto& alg = z.algebra();
  QMatrix zb = offdiagonal_block(z);
  std::size_t n = zb.cols() / 2;
  std::vector<QMatrix> frames;
  for (std::size_t j = 0; j < n; ++j) {
    QMatrix w(2 * n, 2);
    w.set_block(2 * j, 0, QMatrix::identity(2));
    frames.push_back(w);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (int u = 1; u < 4; ++u) {
      QMatrix w = frames[j];
      std::size_t other = (j + 1) % n;
      QMatrix shift = Gauss(frac(1, 2)) * quaternion_unit(u);
      if (other == j) {
        w.set_block(2 * j, 0, QMatrix::identity(2) + shift);
      } else {
        w.set_block(2 * other, 0, shift);
      }
      frames.push_back(w);
    }
  std::vector<AlgebraElement> out;
  for (const auto& w : frames) {
    if (out.size() >= params.count) break;
    auto inv = inverse(zb * w);
    if (!inv) continue;
    auto x = from_offdiagonal_block(alg, -1, w * *inv);
    if (in_counterpart_set(z, x) && !contains_matrix(out, x.matrix())) out.push_back(x);
  }
  if (out.empty()) throw Error(ErrorCode::empty, "no transversal frame in the grid");
  return out;
}

std::vector<AlgebraElement> cr_sample(const AlgebraElement& z, const CounterpartParams& params) {
  if (!z.in_degree(1) || classify(z).tag != "transversal-null") return {jacobson_morozov(z).f};
  const auto& alg = z.algebra();
  const QMatrix& sig = *alg->hermitian_form();
  QMatrix row = cr_slot(z);
  QMatrix zs = row.adjoint();
  Gauss norm = scalar_of(row * zs);
  QMatrix xa = (Gauss(1) / norm) * zs;
  Rational base = -scalar_of(xa.adjoint() * sig * xa).re / 2;
  QMatrix dir = sig * zs;
  std::vector<AlgebraElement> out;
  for (std::size_t k = 0; k < params.count; ++k) {
    Gauss lambda(base, frac(static_cast<long>(k), 2) - frac(3, 2));
    auto x = cr_from_slot(alg, -1, xa + lambda * dir);
    if (!in_counterpart_set(z, x)) throw std::logic_error("null counterpart grid left the counterpart set");
    out.push_back(x);
  }
  return out;
}

}  // namespace

bool is_sl2_triple(const Sl2Triple& t) {
  return bracket(t.e, t.f) == t.h && bracket(t.h, t.e) == Rational(2) * t.e &&
         bracket(t.h, t.f) == Rational(-2) * t.f;
}

bool Subspace::contains(const AlgebraElement& y) const {
  std::size_t dim = algebra->dim();
  Span s(dim);
  for (const auto& b : basis) s.insert(to_sparse(b.coordinates()));
  return s.contains(to_sparse(y.coordinates()));
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis.begin(), other.basis.end(), [&](const AlgebraElement& y) { return contains(y); });
}

Subspace make_subspace(const AlgebraHandle& algebra, const std::vector<AlgebraElement>& spanning) {
  Subspace out{algebra, {}};
  Span s(algebra->dim());
  for (const auto& y : spanning)
    if (s.insert(to_sparse(y.coordinates()))) out.basis.push_back(y);
  return out;
}

Subspace commutant(const AlgebraElement& z) {
  require_p_plus(z);
  const auto& alg = z.algebra();
  auto domain = basis_range(*alg, -alg->depth(), -1);
  const QMatrix& zm = z.matrix();
  auto map = stacked_map(*alg, domain, {[&](const QMatrix& x) { return commutator(zm, x); }});
  Subspace out{alg, {}};
  for (const auto& v : kernel(map))
    out.basis.push_back(AlgebraElement::trusted(alg, combine(domain, v, alg->ambient_size())));
  return out;
}

bool in_normalizing_set(const AlgebraElement& z, const AlgebraElement& x) {
  if (!z.in_p_plus() || !x.in_g_minus()) return false;
  int depth = z.algebra()->depth();
  AlgebraElement v = z;
  for (int k = 0; k < 2 * depth + 2; ++k) {
    v = bracket(x, v);
    if (v.is_zero()) return true;
    if (!v.in_degrees(0, depth)) return false;
  }
  return true;
}

bool in_counterpart_set(const AlgebraElement& z, const AlgebraElement& x) {
  if (!z.in_p_plus() || !x.in_g_minus()) return false;
  auto a = bracket(z, x);
  return bracket(a, z) == Rational(2) * z && bracket(a, x) == Rational(-2) * x;
}

std::optional<AlgebraElement> closed_form_counterpart(const AlgebraElement& z) {
  require_p_plus(z);
  require_nonzero(z);
  const auto& alg = z.algebra();
  switch (alg->family()) {
    case Family::grassmannian:
    case Family::sl2:
      return from_offdiagonal_block(alg, -1, pseudo_inverse_real(offdiagonal_block(z)));
    case Family::quaternionic: {
      QMatrix zb = offdiagonal_block(z);
      QMatrix zs = zb.adjoint();
      return from_offdiagonal_block(alg, -1, zs * *inverse(zb * zs));
    }
    case Family::cr: {
      std::size_t big = alg->ambient_size();
      bool has1 = !grading_component(z, 1).is_zero();
      bool has2 = !grading_component(z, 2).is_zero();
      if (has1 && has2) return std::nullopt;
      if (has2) {
        Rational coeff = z.matrix()(0, big - 1).im;
        QMatrix x(big, big);
        x(big - 1, 0) = Gauss(0, -1 / coeff);
        return AlgebraElement(alg, std::move(x));
      }
      const QMatrix& sig = *alg->hermitian_form();
      QMatrix row = cr_slot(z);
      QMatrix zs = row.adjoint();
      Gauss form = scalar_of(row * sig * zs);
      if (!form.is_zero()) return cr_from_slot(alg, -1, (Gauss(2) / form) * (sig * zs));
      Gauss norm = scalar_of(row * zs);
      QMatrix xa = (Gauss(1) / norm) * zs;
      Rational re = -scalar_of(xa.adjoint() * sig * xa).re / 2;
      return cr_from_slot(alg, -1, xa + Gauss(re) * (sig * zs));
    }
  }
  return std::nullopt;
}

Sl2Triple jacobson_morozov_linear(const AlgebraElement& z) {
  require_p_plus(z);
  require_nonzero(z);
  const auto& alg = z.algebra();
  int k = alg->depth();
  std::size_t n = alg->ambient_size();
  const QMatrix& zm = z.matrix();

  auto target = full_coords(*alg, Rational(-2) * zm);
  std::optional<QMatrix> y;
  for (auto [lo, hi] : {std::pair{-k, -1}, std::pair{-k, k}}) {
    auto domain = basis_range(*alg, lo, hi);
    auto map = stacked_map(*alg, domain, {[&](const QMatrix& v) { return commutator(zm, commutator(zm, v)); }});
    auto sol = solve(map, target);
    if (sol) {
      y = combine(domain, *sol, n);
      break;
    }
  }
  if (!y) throw Error(ErrorCode::no_negative_representative, "no H in the image of ad Z with [H,Z] = 2Z");
  QMatrix h = commutator(zm, *y);

  std::vector<Rational> rhs = full_coords(*alg, h);
  rhs.resize(2 * alg->dim());
  std::optional<QMatrix> f;
  for (auto [lo, hi] : {std::pair{-k, -1}, std::pair{-k, k}}) {
    auto domain = basis_range(*alg, lo, hi);
    auto map = stacked_map(*alg, domain,
                           {[&](const QMatrix& v) { return commutator(zm, v); },
                            [&](const QMatrix& v) { return commutator(h, v) + Gauss(2) * v; }});
    auto sol = solve(map, rhs);
    if (sol) {
      f = combine(domain, *sol, n);
      break;
    }
  }
  if (!f) throw Error(ErrorCode::no_negative_representative, "no F completing (Z, H)");
  auto fm = g_minus_part(AlgebraElement::trusted(alg, *f));
  Sl2Triple t{z, bracket(z, fm), fm};
  if (!is_sl2_triple(t)) throw Error(ErrorCode::no_negative_representative, "g- projection of F breaks the triple");
  return t;
}

Sl2Triple jacobson_morozov(const AlgebraElement& z) {
  require_p_plus(z);
  require_nonzero(z);
  auto x = closed_form_counterpart(z);
  if (x && in_counterpart_set(z, *x)) return Sl2Triple{z, bracket(z, *x), *x};
  return jacobson_morozov_linear(z);
}

GeometricType classify(const AlgebraElement& z) {
  require_nonzero(z);
  require_p_plus(z);
  const auto& alg = z.algebra();
  switch (alg->family()) {
    case Family::grassmannian:
      return {"rank" + std::to_string(rank(offdiagonal_block(z)))};
    case Family::quaternionic:
    case Family::sl2:
      return {"nonzero"};
    case Family::cr: {
      auto part = grading_component(z, 1);
      if (part.is_zero()) return {"contact-annihilating"};
      QMatrix row = cr_slot(part);
      int s = sgn(scalar_of(row * *alg->hermitian_form() * row.adjoint()).re);
      if (s == 0) return {"transversal-null"};
      return {s > 0 ? "transversal-positive" : "transversal-negative"};
    }
  }
  return {"unknown"};
}

std::vector<AlgebraElement> counterpart_sample(const AlgebraElement& z, const CounterpartParams& params) {
  require_nonzero(z);
  require_p_plus(z);
  switch (z.algebra()->family()) {
    case Family::grassmannian:
    case Family::sl2:
      return grassmannian_sample(z, params);
    case Family::quaternionic:
      return quaternionic_sample(z, params);
    case Family::cr:
      return cr_sample(z, params);
  }
  return {};
}

}  // namespace parabolic
