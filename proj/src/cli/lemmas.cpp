#include <functional>
#include <random>

#include "parabolic/cli/lemmas.hpp"

namespace parabolic::cli {

namespace {

using Vecs = std::vector<SparseVec>;

SparseVec unit(std::size_t i) { return {{i, Rational(1)}}; }

Vecs units(std::size_t k) {
  Vecs out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(unit(i));
  return out;
}

Vecs concat(Vecs a, const Vecs& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Real column span of a real matrix.
Vecs columns(const QMatrix& m) {
  Vecs cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::vector<Rational> v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c).re;
    cols.push_back(to_sparse(v));
  }
  return rep_span(m.rows(), cols).basis;
}

/// Kernel of a real matrix acting on column vectors.
Vecs kernel_of(const QMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).re;
  Vecs out;
  for (const auto& v : kernel(r)) out.push_back(to_sparse(v));
  return out;
}

/// Functionals vanishing on span(vs), as vectors of the dual basis.
Vecs annihilator(const Vecs& vs, std::size_t k) {
  RatMatrix rows(vs.size(), k);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (const auto& [j, x] : vs[i]) rows(i, j) = x;
  Vecs out;
  for (const auto& v : kernel(rows)) out.push_back(to_sparse(v));
  return out;
}

Vecs kron_all(const Vecs& a, const Vecs& b, std::size_t db) {
  Vecs out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(kron(x, y, db));
  return out;
}

Vecs wedge_all(const Vecs& a, const Vecs& b, std::size_t d) {
  Vecs out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto w = wedge(x, y, d);
      if (!w.empty()) out.push_back(std::move(w));
    }
  return out;
}

Vecs sym_all(const Vecs& a, const Vecs& b, std::size_t d) {
  Vecs out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(symmetric_product(x, y, d));
  return out;
}

Vecs vectors_of(const TensorRep& rep, const std::vector<AlgebraElement>& ys) {
  Vecs out;
  for (const auto& y : ys) out.push_back(adjoint_vector(rep, y));
  return out;
}

/// Parent coordinates of a sub-rep vector.
SparseVec embed_sub(const TensorRep& sub, const SparseVec& v) {
  SparseVec out;
  for (const auto& [k, x] : v) out = add_scaled(out, sub.sub_basis()[k], x);
  return out;
}

/// Elements y of g_degree with f(y) = 0, for f real-linear.
std::vector<AlgebraElement> kernel_in_degree(const AlgebraHandle& alg, int degree,
                                             const std::function<QMatrix(const AlgebraElement&)>& f) {
  const auto& basis = alg->basis(degree);
  std::vector<QMatrix> images;
  for (const auto& b : basis) images.push_back(f(AlgebraElement::trusted(alg, b)));
  std::size_t entries = images.empty() ? 0 : images[0].rows() * images[0].cols();
  RatMatrix m(2 * entries, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t k = 0; k < entries; ++k) {
      const Gauss& g = images[c](k / images[c].cols(), k % images[c].cols());
      m(2 * k, c) = g.re;
      m(2 * k + 1, c) = g.im;
    }
  std::vector<AlgebraElement> out;
  for (const auto& v : kernel(m)) out.push_back(AlgebraElement::from_coordinates(alg, degree, v));
  return out;
}

QMatrix scalar_matrix(std::initializer_list<Gauss> values) {
  QMatrix m(1, values.size());
  std::size_t c = 0;
  for (const auto& v : values) m(0, c++) = v;
  return m;
}

/// Lower-left block of a g_{-1} element (also defined for zero).
QMatrix lower_block(const AlgebraElement& y) {
  const auto& parts = y.algebra()->block_partition();
  return y.matrix().block(parts[0], 0, parts[1], parts[0]);
}

/// Block product ZX: 2x2 (or m x m) blocks for |1|-graded families, the scalar slot product for cr.
QMatrix zx(const AlgebraElement& z, const AlgebraElement& x) {
  if (z.algebra()->family() == Family::cr) return cr_slot(z) * cr_slot(x);
  return offdiagonal_block(z) * lower_block(x);
}

/// X^* I X for a g_{-1} element of cr.
Gauss hermitian_norm(const AlgebraElement& x) {
  QMatrix c = cr_slot(x);
  return (c.adjoint() * *x.algebra()->hermitian_form() * c)(0, 0);
}

Json table_json(const EigenDecomposition& d) { return to_json(d); }

class Claims {
 public:
  explicit Claims(LemmaReport& report) : report_(report) {}

  void add(std::string id, std::string statement, bool pass, Json evidence) {
    report_.claims.push_back({std::move(id), std::move(statement), pass, std::move(evidence)});
  }

  /// Eigenspaces equal the expected subspaces and no other eigenvalue occurs.
  void table(std::string id, std::string statement, const EigenDecomposition& d,
             const std::vector<std::pair<Rational, Vecs>>& expected) {
    bool pass = true;
    Json rows = Json::array();
    std::size_t covered = 0;
    for (const auto& [mu, vecs] : expected) {
      auto want = rep_span(d.dimension, vecs);
      auto got = eigenspace(d, mu);
      bool eq = got == want;
      pass = pass && eq;
      covered += got.dimension();
      rows.push_back({{"eigenvalue", to_string(mu)},
                      {"computed_dimension", got.dimension()},
                      {"expected_dimension", want.dimension()},
                      {"equal", eq}});
    }
    pass = pass && covered == d.dimension;
    add(std::move(id), std::move(statement), pass, {{"rows", rows}, {"computed", table_json(d)}});
  }

  void containment(std::string id, std::string statement, const RepSubspace& inner, const RepSubspace& outer) {
    bool ok = outer.contains(inner);
    add(std::move(id), std::move(statement), ok,
        {{"subspace_dimension", inner.dimension()}, {"container_dimension", outer.dimension()}, {"contained", ok}});
  }

  void equality(std::string id, std::string statement, const RepSubspace& a, const RepSubspace& b) {
    bool ok = a == b;
    add(std::move(id), std::move(statement), ok,
        {{"computed_dimension", a.dimension()}, {"expected_dimension", b.dimension()}, {"equal", ok}});
  }

  /// Two predicates agree on every probe element.
  void agreement(std::string id, std::string statement, const std::vector<AlgebraElement>& probes,
                 const std::function<bool(const AlgebraElement&)>& computed,
                 const std::function<bool(const AlgebraElement&)>& described) {
    std::size_t members = 0, mismatches = 0;
    for (const auto& y : probes) {
      bool a = computed(y), b = described(y);
      members += a ? 1 : 0;
      mismatches += a != b ? 1 : 0;
    }
    add(std::move(id), std::move(statement), mismatches == 0,
        {{"tested", probes.size()}, {"members", members}, {"mismatches", mismatches}});
  }

  void zero(std::string id, std::string statement, const RepSubspace& s) {
    add(std::move(id), std::move(statement), s.dimension() == 0, {{"dimension", s.dimension()}});
  }

 private:
  LemmaReport& report_;
};

/// Deterministic probe elements of g-: counterparts and their shifts, kernel directions of ZX,
/// commutant elements, basis elements and random elements.
std::vector<AlgebraElement> probe_set(const AlgebraElement& z, std::uint64_t seed) {
  const auto& alg = z.algebra();
  std::mt19937_64 rng(seed);
  std::vector<AlgebraElement> out{AlgebraElement::zero(alg)};
  auto xs = counterpart_sample(z);
  auto ker = kernel_in_degree(alg, -1, [&](const AlgebraElement& y) { return zx(z, y); });
  for (const auto& x : xs) {
    out.push_back(x);
    out.push_back(Rational(2) * x);
    for (std::size_t k = 0; k < ker.size() && k < 4; ++k) out.push_back(x + ker[k]);
  }
  for (const auto& c : commutant(z).basis) out.push_back(c);
  for (std::size_t a = 0; a < ker.size(); ++a) {
    out.push_back(ker[a]);
    for (std::size_t b = a + 1; b < ker.size(); ++b) {
      out.push_back(ker[a] + ker[b]);
      out.push_back(ker[a] - ker[b]);
      if (alg->family() == Family::cr) out.push_back(ker[a] + complex_structure(ker[b]));
    }
  }
  for (int d = -alg->depth(); d <= -1; ++d)
    for (std::size_t i = 0; i < alg->dim(d); ++i) out.push_back(AlgebraElement::basis_element(alg, d, i));
  for (int i = 0; i < 16; ++i) out.push_back(random_element(alg, -alg->depth(), -1, rng, 2));
  return out;
}

Sl2Triple triple_for(const AlgebraElement& z, const AlgebraElement& x) { return {z, bracket(z, x), x}; }

// ------------------------------------------------------------ grassmannian

struct GrassFrame {
  std::size_t n = 0;
  QMatrix zb, xb;
  Vecs im_z, ker_z, w, v;
  Vecs im_z_ann, ker_z_ann, w_ann, v_ann;
};

GrassFrame grass_frame(const AlgebraElement& z, const AlgebraElement& x) {
  GrassFrame f;
  f.zb = offdiagonal_block(z);
  f.xb = offdiagonal_block(x);
  f.n = f.zb.cols();
  f.im_z = columns(f.zb);
  f.ker_z = kernel_of(f.zb);
  f.w = columns(f.xb);
  f.v = kernel_of(f.xb);
  f.im_z_ann = annihilator(f.im_z, 2);
  f.ker_z_ann = annihilator(f.ker_z, f.n);
  f.w_ann = annihilator(f.w, f.n);
  f.v_ann = annihilator(f.v, 2);
  return f;
}

/// Lambda^2 R^n* (x) R^n eigen-table shared by both Grassmannian lemmas.
std::vector<std::pair<Rational, Vecs>> v2_table(const GrassFrame& f) {
  std::size_t n = f.n;
  auto wk = [&](const Vecs& a, const Vecs& b, const Vecs& c) { return kron_all(wedge_all(a, b, n), c, n); };
  return {{Rational(2), wk(f.ker_z_ann, f.ker_z_ann, f.ker_z)},
          {Rational(1), concat(wk(f.ker_z_ann, f.ker_z_ann, f.w), wk(f.ker_z_ann, f.w_ann, f.ker_z))},
          {Rational(0), concat(wk(f.ker_z_ann, f.w_ann, f.w), wk(f.w_ann, f.w_ann, f.ker_z))},
          {Rational(-1), wk(f.w_ann, f.w_ann, f.w)}};
}

bool is_identity(const QMatrix& m) { return m == QMatrix::identity(m.rows()); }

void grass_two(const AlgebraElement& z, std::uint64_t seed, Claims& c) {
  const auto& alg = z.algebra();
  auto xs = counterpart_sample(z);
  const auto& x = xs.front();
  auto t = triple_for(z, x);
  auto f = grass_frame(z, x);
  auto probes = probe_set(z, seed);

  c.add("commutant", "C_{g-}(Z) = {0}", commutant(z).dimension() == 0, {{"dimension", commutant(z).dimension()}});
  c.agreement("normalizing-set", "F_{g-}(Z) = {X : XZX = 0}", probes,
              [&](const AlgebraElement& y) { return in_normalizing_set(z, y); },
              [&](const AlgebraElement& y) {
                QMatrix b = lower_block(y);
                return (b * f.zb * b).is_zero();
              });
  c.agreement("counterpart-set", "T_{g-}(Z) = {X : ZX = Id}", probes,
              [&](const AlgebraElement& y) { return in_counterpart_set(z, y); },
              [&](const AlgebraElement& y) { return is_identity(zx(z, y)); });
  bool transversal = true;
  for (const auto& s : xs) {
    Vecs both = concat(columns(offdiagonal_block(s)), f.ker_z);
    transversal = transversal && rep_span(f.n, both).dimension() == f.n;
  }
  c.add("counterpart-images", "im(X) is a 2-plane transversal to ker(Z) for X in T", transversal,
        {{"samples", xs.size()}});

  auto r2 = eigendecompose(t.h, TensorRep::standard(alg, 0));
  c.table("a-on-r2", "A acts by 1 on R^2", r2, {{Rational(1), units(2)}});
  auto rn = eigendecompose(t.h, TensorRep::standard(alg, 1));
  c.table("a-on-rn", "A acts on R^n by -1 on W = im(X) and 0 on ker(Z)", rn, {{Rational(-1), f.w}, {Rational(0), f.ker_z}});

  auto gm = eigendecompose(t.h, build_rep(alg, "adjoint-negative"));
  bool negative = true, in_range = true;
  for (const auto& mu : gm.eigenvalues()) {
    negative = negative && sgn(mu) < 0;
    in_range = in_range && (mu == -1 || mu == -2);
  }
  c.add("g-1-negative", "eigenvalues of A on g_{-1} are negative, in {-1, -2}", negative && in_range,
        {{"eigenvalues", table_json(gm)}});

  auto v2 = eigendecompose(t.h, build_rep(alg, "grass-v2"));
  c.table("v2-table", "Lambda^2 R^n* (x) R^n eigen-table {2, 1, 0, -1}", v2, v2_table(f));

  auto vrep = build_rep(alg, "grass-v");
  std::size_t dv2 = v2.dimension;
  auto vst = stable_subspaces(eigendecompose(t.h, vrep));
  c.zero("v-ss", "V_ss(A) = 0", vst.strongly_stable);
  Vecs outer;
  for (const auto& s : units(3))
    for (const auto& a : units(2))
      for (const auto& om : units(f.n * (f.n - 1) / 2))
        for (const auto& w : f.w) outer.push_back(kron(kron(s, a, 2), kron(om, w, f.n), dv2));
  c.containment("v-st", "V_st(A) in (S^2 R^2 (x) Lambda^2 R^n*) (x) (R^2* (x) W)", vst.stable,
                rep_span(vrep.dimension(), outer));
  Vecs exact;
  for (const auto& s : units(3))
    for (const auto& a : units(2))
      for (const auto& om : wedge_all(f.w_ann, f.w_ann, f.n))
        for (const auto& w : f.w) exact.push_back(kron(kron(s, a, 2), kron(om, w, f.n), dv2));
  c.equality("v-st-exact", "V_st(A) = (S^2 R^2 (x) Lambda^2 W°) (x) (R^2* (x) W)", vst.stable,
             rep_span(vrep.dimension(), exact));

  auto u = eigendecompose(t.h, build_rep(alg, "grass-u"));
  bool positive = true;
  for (const auto& mu : u.eigenvalues()) positive = positive && sgn(mu) > 0;
  c.add("u-positive", "all eigenvalues of A on (Lambda^2 R^2 (x) S^2 R^n*) (x) sl(n) are positive", positive,
        {{"eigenvalues", table_json(u)}});
  c.zero("u-st", "U_st(A) = 0", stable_subspaces(u).stable);

  c.zero("torsion-ambient-ss", "torsion ambient Lambda^2 g_1 (x) g_{-1}: W_ss(A) = 0",
         stable_subspaces(eigendecompose(t.h, build_rep(alg, "torsion-ambient"))).strongly_stable);
  c.zero("curvature-ambient-st", "curvature ambient Lambda^2 g_1 (x) g_0: W_st(A) = 0",
         stable_subspaces(eigendecompose(t.h, build_rep(alg, "curvature-ambient"))).stable);
}

void grass_one(const AlgebraElement& z, std::uint64_t seed, Claims& c) {
  const auto& alg = z.algebra();
  auto xs = counterpart_sample(z);
  const auto& x = xs.front();
  auto t = triple_for(z, x);
  auto f = grass_frame(z, x);
  std::size_t n = f.n;
  auto probes = probe_set(z, seed);
  auto gminus = build_rep(alg, "adjoint-negative");
  auto comm = commutant(z);
  RepSubspace c_space = rep_span(gminus.dimension(), vectors_of(gminus, comm.basis));

  std::vector<AlgebraElement> described;
  for (const auto& k : f.ker_z)
    for (const auto& phi : f.im_z_ann) {
      QMatrix b(n, 2);
      for (const auto& [r, kv] : k)
        for (const auto& [col, pv] : phi) b(r, col) = Gauss(Rational(kv * pv));
      described.push_back(from_offdiagonal_block(alg, -1, b));
    }
  c.equality("commutant", "C_{g-}(Z) = {X : im(Z) in ker(X), im(X) in ker(Z)}", c_space,
             rep_span(gminus.dimension(), vectors_of(gminus, described)));
  c.agreement("normalizing-set", "F_{g-}(Z) = {X : XZX = 0}", probes,
              [&](const AlgebraElement& y) { return in_normalizing_set(z, y); },
              [&](const AlgebraElement& y) {
                QMatrix b = lower_block(y);
                return (b * f.zb * b).is_zero();
              });
  c.agreement("counterpart-set", "T_{g-}(Z) = {X : rk(X) = 1, tr(ZX) = tr(XZ) = 1}", probes,
              [&](const AlgebraElement& y) { return in_counterpart_set(z, y); },
              [&](const AlgebraElement& y) {
                QMatrix b = lower_block(y);
                return rank(b) == 1 && (f.zb * b).trace() == Gauss(1) && (b * f.zb).trace() == Gauss(1);
              });

  // Lines V transversal to im(Z) and W transversal to ker(Z) determine a unique X in T.
  std::size_t pairs = 0, unique = 0;
  for (const auto& vline : std::vector<std::vector<Rational>>{{0, 1}, {1, 1}, {-2, 1}})
    for (std::size_t j = 0; j < 3; ++j) {
      QMatrix vl(2, 1), wl(n, 1);
      vl(0, 0) = vline[0];
      vl(1, 0) = vline[1];
      wl(0, 0) = 1;
      if (j > 0) wl(j % n, 0) = Rational(j);
      CounterpartParams p;
      p.kernel_line = vl;
      p.image_line = wl;
      std::vector<AlgebraElement> got;
      try {
        got = counterpart_sample(z, p);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::empty) throw;
        continue;
      }
      ++pairs;
      if (got.size() != 1 || !in_counterpart_set(z, got[0])) continue;
      QMatrix b = offdiagonal_block(got[0]);
      // X = c w phi^T with phi spanning V°; tr(ZX) = 1 fixes c.
      Vecs vo = annihilator(columns(vl), 2);
      QMatrix cand(n, 2);
      for (std::size_t r = 0; r < n; ++r)
        for (const auto& [col, pv] : vo[0]) cand(r, col) = wl(r, 0) * Gauss(pv);
      Gauss tr = (f.zb * cand).trace();
      if (tr.is_zero()) continue;
      cand = (Gauss(1) / tr) * cand;
      if (cand == b && rank(b) == 1 && kernel_of(b).size() == 1 && rep_span(2, concat(kernel_of(b), columns(vl))).dimension() == 1)
        ++unique;
    }
  c.add("line-pairs", "transversal lines V, W give a unique X in T with ker(X) = V, im(X) = W", pairs > 0 && unique == pairs,
        {{"pairs", pairs}, {"matched", unique}});

  auto r2 = eigendecompose(t.h, TensorRep::standard(alg, 0));
  c.table("a-on-r2", "A acts on R^2 by 1 on im(Z) and 0 on V = ker(X)", r2, {{Rational(1), f.im_z}, {Rational(0), f.v}});
  auto rn = eigendecompose(t.h, TensorRep::standard(alg, 1));
  c.table("a-on-rn", "A acts on R^n by 0 on ker(Z) and -1 on W = im(X)", rn, {{Rational(0), f.ker_z}, {Rational(-1), f.w}});

  auto gm = eigendecompose(t.h, gminus);
  bool nonpositive = true;
  for (const auto& mu : gm.eigenvalues()) nonpositive = nonpositive && sgn(mu) <= 0;
  c.add("g-1-nonpositive", "eigenvalues of A on g_{-1} are non-positive", nonpositive, {{"eigenvalues", table_json(gm)}});
  c.equality("zero-eigenspace", "the 0-eigenspace of A on g- is C_{g-}(Z)", eigenspace(gm, Rational(0)), c_space);

  const auto& iz = f.im_z;
  const auto& vv = f.v;
  auto v1rep = build_rep(alg, "grass-v1");
  auto v1 = eigendecompose(t.h, v1rep);
  c.table("v1-table", "S^2 R^2 (x) R^2* eigen-table {2, 1, 0, -1}", v1,
          {{Rational(2), kron_all(sym_all(iz, iz, 2), f.im_z_ann, 2)},
           {Rational(1), concat(kron_all(sym_all(iz, iz, 2), f.v_ann, 2), kron_all(sym_all(iz, vv, 2), f.im_z_ann, 2))},
           {Rational(0), concat(kron_all(sym_all(iz, vv, 2), f.v_ann, 2), kron_all(sym_all(vv, vv, 2), f.im_z_ann, 2))},
           {Rational(-1), kron_all(sym_all(vv, vv, 2), f.v_ann, 2)}});
  auto v2rep = build_rep(alg, "grass-v2");
  auto v2 = eigendecompose(t.h, v2rep);
  c.table("v2-table", "Lambda^2 R^n* (x) R^n eigen-table {2, 1, 0, -1}", v2, v2_table(f));

  auto urep = build_rep(alg, "grass-u");
  const auto& sl = urep.factors()[1];
  auto sld = eigendecompose(t.h, sl);
  RepSubspace sl_span = rep_span(n * n, sl.sub_basis());
  bool sl_ok = true;
  Json sl_rows = Json::array();
  std::vector<std::pair<Rational, Vecs>> sl_expected = {
      {Rational(-1), kron_all(f.w_ann, f.w, n)},
      {Rational(0), concat(kron_all(f.ker_z_ann, f.w, n), kron_all(f.w_ann, f.ker_z, n))},
      {Rational(1), kron_all(f.ker_z_ann, f.ker_z, n)}};
  std::size_t covered = 0;
  for (const auto& [mu, vecs] : sl_expected) {
    Vecs got;
    for (const auto& v : eigenspace(sld, mu).basis) got.push_back(embed_sub(sl, v));
    covered += got.size();
    auto want = rep_intersection(rep_span(n * n, vecs), sl_span);
    bool eq = rep_span(n * n, got) == want;
    sl_ok = sl_ok && eq;
    sl_rows.push_back({{"eigenvalue", to_string(mu)}, {"computed_dimension", got.size()},
                       {"expected_dimension", want.dimension()}, {"equal", eq}});
  }
  sl_ok = sl_ok && covered == sl.dimension();
  c.add("sl-table", "sl(n) eigen-table: W°(x)W -> -1, ker(Z)°(x)W + W°(x)ker(Z) -> 0, ker(Z)°(x)ker(Z) -> 1 (within sl(n))",
        sl_ok, {{"rows", sl_rows}});

  auto v1s = stable_subspaces(v1);
  auto v2s = stable_subspaces(v2);
  std::size_t d1 = v1rep.dimension(), d2 = v2rep.dimension();
  c.equality("a", "V1_ss(A) = S^2 V (x) V°", v1s.strongly_stable, rep_span(d1, kron_all(sym_all(vv, vv, 2), f.v_ann, 2)));
  c.containment("b", "V1_st(A) in S^2 V (x) R^2* + (V . R^2) (x) V°", v1s.stable,
                rep_span(d1, concat(kron_all(sym_all(vv, vv, 2), units(2), 2), kron_all(sym_all(vv, units(2), 2), f.v_ann, 2))));
  c.equality("c", "V2_ss(A) = Lambda^2 W° (x) W", v2s.strongly_stable,
             rep_span(d2, kron_all(wedge_all(f.w_ann, f.w_ann, n), f.w, n)));
  c.containment("d", "V2_st(A) in Lambda^2 W° (x) R^n + (W° ^ R^n*) (x) W", v2s.stable,
                rep_span(d2, concat(kron_all(wedge_all(f.w_ann, f.w_ann, n), units(n), n),
                                    kron_all(wedge_all(f.w_ann, units(n), n), f.w, n))));
  auto vrep = build_rep(alg, "grass-v");
  auto vd = stable_subspaces(eigendecompose(t.h, vrep));
  c.containment("e", "V_ss(A) in V1_ss (x) V2_st + V1_st (x) V2_ss", vd.strongly_stable,
                rep_span(vrep.dimension(), concat(kron_all(v1s.strongly_stable.basis, v2s.stable.basis, d2),
                                                  kron_all(v1s.stable.basis, v2s.strongly_stable.basis, d2))));
  // (S^2 R^2 (x) Lambda^2 R^n*) (x) C in the flat order S^2 R^2, R^2*, Lambda^2 R^n*, R^n.
  auto flat = [&](const Vecs& s2, const Vecs& l2) {
    Vecs out;
    for (const auto& cm : comm.basis) {
      SparseVec ct = block_tensor(cm);
      for (const auto& s : s2)
        for (const auto& om : l2) {
          SparseVec acc;
          for (const auto& [idx, val] : ct)
            acc = add_scaled(acc, kron(kron(s, unit(idx / n), 2), kron(om, unit(idx % n), n), d2), val);
          out.push_back(acc);
        }
    }
    return out;
  };
  std::size_t l2 = n * (n - 1) / 2;
  auto inter = rep_intersection(vd.stable, rep_span(vrep.dimension(), flat(units(3), units(l2))));
  c.containment("f", "V_st(A) meet (S^2 R^2 (x) Lambda^2 R^n*) (x) C in (S^2 V (x) Lambda^2 W°) (x) C", inter,
                rep_span(vrep.dimension(), flat(sym_all(vv, vv, 2), wedge_all(f.w_ann, f.w_ann, n))));
  auto us = stable_subspaces(eigendecompose(t.h, urep));
  c.zero("g", "U_ss(A) = 0", us.strongly_stable);
  std::size_t du1 = urep.factors()[0].dimension();
  Vecs ust;
  for (const auto& v : us.stable.basis) ust.push_back(embed_factor(urep, v, 1));
  Vecs houter;
  for (const auto& e : units(du1))
    for (const auto& r : units(n))
      for (const auto& w : f.w) houter.push_back(kron(e, kron(r, w, n), n * n));
  c.containment("h", "U_st(A) in (Lambda^2 R^2 (x) S^2 R^n*) (x) R^n* (x) W", rep_span(du1 * n * n, ust),
                rep_span(du1 * n * n, houter));
}

// ------------------------------------------------------------ quaternionic

void quat(const AlgebraElement& z, std::uint64_t seed, Claims& c) {
  const auto& alg = z.algebra();
  auto xs = counterpart_sample(z);
  const auto& x = xs.front();
  auto t = triple_for(z, x);
  auto probes = probe_set(z, seed);
  QMatrix zb = offdiagonal_block(z);

  c.add("commutant", "C_{g-}(Z) = {0}", commutant(z).dimension() == 0, {{"dimension", commutant(z).dimension()}});
  c.agreement("normalizing-set", "F_{g-}(Z) = {X : ZX = 0}", probes,
              [&](const AlgebraElement& y) { return in_normalizing_set(z, y); },
              [&](const AlgebraElement& y) { return zx(z, y).is_zero(); });
  c.agreement("counterpart-set", "T_{g-}(Z) = {X : ZX = Id_H}", probes,
              [&](const AlgebraElement& y) { return in_counterpart_set(z, y); },
              [&](const AlgebraElement& y) { return is_identity(zx(z, y)); });
  bool transversal = true;
  for (const auto& s : xs) {
    QMatrix xb = offdiagonal_block(s);
    transversal = transversal && rank(xb) == 2 && rank(zb * xb) == 2;
  }
  c.add("counterpart-lines", "im(X) is a quaternionic line meeting ker(Z) trivially for X in T", transversal,
        {{"samples", xs.size()}});

  auto gm = eigendecompose(t.h, build_rep(alg, "adjoint-negative"));
  bool negative = true;
  for (const auto& mu : gm.eigenvalues()) negative = negative && sgn(mu) < 0;
  c.add("g-1-negative", "eigenvalues of A on g_{-1} are negative", negative, {{"eigenvalues", table_json(gm)}});

  auto trep = build_rep(alg, "torsion-ambient");
  auto ts = stable_subspaces(eigendecompose(t.h, trep));
  c.zero("v-ss", "torsion ambient: V_ss(A) = 0", ts.strongly_stable);
  c.zero("u-st", "curvature ambient: U_st(A) = 0",
         stable_subspaces(eigendecompose(t.h, build_rep(alg, "curvature-ambient"))).stable);
  QMatrix xb = offdiagonal_block(x);
  Vecs lw;
  for (int u = 0; u < 4; ++u) lw.push_back(to_sparse(from_offdiagonal_block(alg, -1, xb * quaternion_unit(u)).coordinates(-1)));
  std::size_t d1 = alg->dim(1), dm = alg->dim(-1);
  c.containment("v-st", "V_st(A) in Lambda^2 g_1 (x) L_H(H, W)", ts.stable,
                rep_span(trep.dimension(), kron_all(units(d1 * (d1 - 1) / 2), lw, dm)));
}

// ------------------------------------------------------------ cr

void contact(const AlgebraElement& z, std::uint64_t, Claims& c) {
  const auto& alg = z.algebra();
  auto a0 = grading_element(alg);
  std::optional<AlgebraElement> found;
  for (const auto& x : counterpart_sample(z))
    if (x.in_degree(-2) && in_counterpart_set(z, x) && bracket(z, x) == a0) found = x;
  c.add("grading-element", "some X in g_{-2} meet T_{g-}(Z) has [Z,X] = grading element", found.has_value(),
        found ? Json{{"X", to_json(*found)}, {"A", to_json(a0)}} : Json::object());
  auto t = found ? triple_for(z, *found) : jacobson_morozov(z);
  c.add("commutant", "C_{g-}(Z) = 0", commutant(z).dimension() == 0, {{"dimension", commutant(z).dimension()}});
  for (const char* name : {"cr-torsion-ambient", "cr-curvature-ambient", "torsion-ambient", "curvature-ambient"})
    c.zero(std::string("st-") + name, std::string(name) + ": W_st(A) = 0",
           stable_subspaces(eigendecompose(t.h, build_rep(alg, name))).stable);
}

void cr_nonnull(const AlgebraElement& z, std::uint64_t seed, Claims& c) {
  const auto& alg = z.algebra();
  const QMatrix& sig = *alg->hermitian_form();
  QMatrix zr = cr_slot(z);
  Gauss norm = (zr * sig * zr.adjoint())(0, 0);
  auto x0 = cr_from_slot(alg, -1, (Gauss(2) / norm) * (sig * zr.adjoint()));
  auto probes = probe_set(z, seed);
  c.add("commutant", "C_{g-}(Z) = {0}", commutant(z).dimension() == 0, {{"dimension", commutant(z).dimension()}});
  c.agreement("normalizing-set", "F_{g-}(Z) = {X in g_{-1} : ZX = X^* I X = 0}", probes,
              [&](const AlgebraElement& y) { return in_normalizing_set(z, y); },
              [&](const AlgebraElement& y) {
                return y.in_degree(-1) && zx(z, y).is_zero() && hermitian_norm(y).is_zero();
              });
  auto sample = counterpart_sample(z);
  bool singleton = sample.size() == 1 && sample[0] == x0 && in_counterpart_set(z, x0);
  c.add("counterpart-set", "T_{g-}(Z) = {2/(Z I Z^*) I Z^*}", singleton,
        {{"X0", to_json(x0)}, {"sampled", sample.size()}});
  c.agreement("counterpart-probe", "X in T_{g-}(Z) exactly when X = X0 (probe set)", probes,
              [&](const AlgebraElement& y) { return in_counterpart_set(z, y); },
              [&](const AlgebraElement& y) { return y == x0; });
  auto t = triple_for(z, x0);
  auto a0 = grading_element(alg);
  c.add("a-in-g0", "A = [Z, X0] lies in g_0", t.h.in_degree(0), {{"A", to_json(t.h)}});
  c.add("twice-grading", "A = 2 x grading element", t.h == Rational(2) * a0, {{"A", to_json(t.h)}});
  auto gm = eigendecompose(t.h, build_rep(alg, "adjoint-negative"));
  bool negative = true;
  for (const auto& mu : gm.eigenvalues()) negative = negative && sgn(mu) < 0;
  c.add("g-negative", "eigenvalues of A on g- are negative", negative, {{"eigenvalues", table_json(gm)}});
  for (const char* name : {"cr-torsion-ambient", "cr-curvature-ambient", "torsion-ambient", "curvature-ambient"})
    c.zero(std::string("st-") + name, std::string(name) + ": W_st(A) = 0",
           stable_subspaces(eigendecompose(t.h, build_rep(alg, name))).stable);
}

void cr_null(const AlgebraElement& z, std::uint64_t seed, Claims& c) {
  const auto& alg = z.algebra();
  const QMatrix& sig = *alg->hermitian_form();
  auto x = counterpart_sample(z).front();
  auto t = triple_for(z, x);
  auto probes = probe_set(z, seed);
  QMatrix zr = cr_slot(z), xc = cr_slot(x);
  auto gminus = build_rep(alg, "adjoint-negative");
  auto g1rep = TensorRep::adjoint(alg, -1, -1);

  auto iz = cr_from_slot(alg, -1, sig * zr.adjoint());
  RepSubspace expected_c = rep_span(gminus.dimension(), vectors_of(gminus, {iz, complex_structure(iz)}));
  auto comm = commutant(z);
  RepSubspace c_space = rep_span(gminus.dimension(), vectors_of(gminus, comm.basis));
  c.add("commutant", "C_{g-}(Z) = C . I Z^* (real dimension 2)", c_space == expected_c,
        {{"computed_dimension", c_space.dimension()},
         {"expected_dimension", expected_c.dimension()},
         {"contains_I_Z*", comm.contains(iz)},
         {"contains_i_I_Z*", comm.contains(complex_structure(iz))},
         {"commutant", to_json(comm)}});
  c.agreement("normalizing-set", "F_{g-}(Z) = {X in g_{-1} : ZX = X^* I X = 0}", probes,
              [&](const AlgebraElement& y) { return in_normalizing_set(z, y); },
              [&](const AlgebraElement& y) {
                return y.in_degree(-1) && zx(z, y).is_zero() && hermitian_norm(y).is_zero();
              });
  c.agreement("counterpart-set", "T_{g-}(Z) = {X in g_{-1} : ZX = 1, X^* I X = 0}", probes,
              [&](const AlgebraElement& y) { return in_counterpart_set(z, y); },
              [&](const AlgebraElement& y) {
                return y.in_degree(-1) && zx(z, y) == QMatrix::identity(1) && hermitian_norm(y).is_zero();
              });
  c.add("a-in-g0", "A = [Z, X] lies in g_0", t.h.in_degree(0), {{"A", to_json(t.h)}});

  auto gm = eigendecompose(t.h, gminus);
  bool nonpositive = true;
  for (const auto& mu : gm.eigenvalues()) nonpositive = nonpositive && sgn(mu) <= 0;
  auto zero_space = eigenspace(gm, Rational(0));
  c.add("zero-eigenspace", "A is non-positive on g- and its 0-eigenspace is C_{g-}(Z)",
        nonpositive && zero_space == c_space,
        {{"eigenvalues", table_json(gm)},
         {"zero_eigenspace_dimension", zero_space.dimension()},
         {"commutant_dimension", c_space.dimension()},
         {"zero_eigenspace_is_C.IZ*", zero_space == expected_c}});

  auto ker_z_perp = kernel_in_degree(alg, -1, [&](const AlgebraElement& y) {
    QMatrix s = cr_slot(y);
    return scalar_matrix({(zr * s)(0, 0), (xc.adjoint() * sig * s)(0, 0)});
  });
  auto g1d = eigendecompose(t.h, g1rep);
  c.table("g-1-table", "A on g_{-1}: C X -> -2, ker(Z) meet X^perp -> -1, C I Z^* -> 0", g1d,
          {{Rational(-2), vectors_of(g1rep, {x, complex_structure(x)})},
           {Rational(-1), vectors_of(g1rep, ker_z_perp)},
           {Rational(0), vectors_of(g1rep, {iz, complex_structure(iz)})}});

  auto pplus = build_rep(alg, "p-plus");
  auto ixs = cr_from_slot(alg, 1, xc.adjoint() * sig);
  auto ker_x_perp = kernel_in_degree(alg, 1, [&](const AlgebraElement& w) {
    QMatrix s = cr_slot(w);
    return scalar_matrix({(s * xc)(0, 0), (s * sig * zr.adjoint())(0, 0)});
  });
  std::vector<AlgebraElement> top{z, complex_structure(z)};
  for (std::size_t i = 0; i < alg->dim(2); ++i) top.push_back(AlgebraElement::basis_element(alg, 2, i));
  c.table("p-plus-table", "p+ eigen-table: C I X^* -> 0, ker(X) meet Z^perp -> 1, g_2 + C Z -> 2",
          eigendecompose(t.h, pplus),
          {{Rational(0), vectors_of(pplus, {ixs, complex_structure(ixs)})},
           {Rational(1), vectors_of(pplus, ker_x_perp)},
           {Rational(2), vectors_of(pplus, top)}});

  auto trep = build_rep(alg, "cr-torsion-ambient");
  auto ts = stable_subspaces(eigendecompose(t.h, trep));
  std::size_t d1 = alg->dim(1), dm = alg->dim(-1), w2 = d1 * (d1 - 1) / 2;
  Vecs st, ss;
  for (const auto& v : ts.stable.basis) st.push_back(embed_factor(trep, v, 0));
  for (const auto& v : ts.strongly_stable.basis) ss.push_back(embed_factor(trep, v, 0));
  auto x_perp = kernel_in_degree(alg, -1, [&](const AlgebraElement& y) {
    return scalar_matrix({(xc.adjoint() * sig * cr_slot(y))(0, 0)});
  });
  c.containment("v-st", "V_st(A) in Lambda^2 g_1 (x) X^perp", rep_span(w2 * dm, st),
                rep_span(w2 * dm, kron_all(units(w2), vectors_of(g1rep, x_perp), dm)));
  auto g1p = TensorRep::adjoint(alg, 1, 1);
  Vecs pair = wedge_all(vectors_of(g1p, {ixs, complex_structure(ixs)}), vectors_of(g1p, ker_x_perp), d1);
  c.containment("v-ss", "V_ss(A) in (C I X^*) ^ (ker(X) meet Z^perp) (x) C X", rep_span(w2 * dm, ss),
                rep_span(w2 * dm, kron_all(pair, vectors_of(g1rep, {x, complex_structure(x)}), dm)));

  // Phi in U_st with Phi(Y1,Y2).Z = 0 for all Y1, Y2 vanishes on C X in either slot.
  auto urep = build_rep(alg, "cr-curvature-ambient");
  auto us = stable_subspaces(eigendecompose(t.h, urep));
  std::size_t d0 = alg->dim(0);
  RatMatrix adz = ad_matrix(z, 0, 1);
  Vecs embedded;
  for (const auto& v : us.stable.basis) embedded.push_back(embed_factor(urep, v, 0));
  RatMatrix act(w2 * d1, embedded.size());
  for (std::size_t k = 0; k < embedded.size(); ++k)
    for (const auto& [idx, val] : embedded[k]) {
      std::size_t w = idx / d0, j = idx % d0;
      for (std::size_t r = 0; r < d1; ++r)
        if (sgn(adz(r, j)) != 0) act(w * d1 + r, k) += val * adz(r, j);
    }
  Vecs premise;
  for (const auto& coeffs : kernel(act)) {
    SparseVec acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (sgn(coeffs[k]) != 0) acc = add_scaled(acc, embedded[k], coeffs[k]);
    premise.push_back(acc);
  }
  auto jx = complex_structure(x);
  auto ann = kernel_in_degree(alg, 1, [&](const AlgebraElement& w) {
    return scalar_matrix({Gauss(pairing(w, x)), Gauss(pairing(w, jx))});
  });
  Vecs annv = vectors_of(g1p, ann);
  c.containment("phi", "Phi in U_st with Phi(.,.).Z = 0 vanishes when an argument lies in C X",
                rep_span(w2 * d0, premise), rep_span(w2 * d0, kron_all(wedge_all(annv, annv, d1), units(d0), d0)));
}

struct Entry {
  std::string id;
  std::string tag;
  std::function<bool(const AlgebraHandle&)> fits;
  std::function<void(const AlgebraElement&, std::uint64_t, Claims&)> run;
};

const std::vector<Entry>& registry() {
  auto grass2 = [](const AlgebraHandle& a) { return a->family() == Family::grassmannian && a->params().m == 2; };
  auto is_cr = [](const AlgebraHandle& a) { return a->family() == Family::cr; };
  static const std::vector<Entry> entries = {
      {"grass-two", "rank2", grass2, grass_two},
      {"grass-one", "rank1", grass2, grass_one},
      {"quat", "nonzero", [](const AlgebraHandle& a) { return a->family() == Family::quaternionic; }, quat},
      {"contact", "contact-annihilating", is_cr, contact},
      {"cr-nonnull", "transversal-positive", is_cr, cr_nonnull},
      {"cr-null", "transversal-null", [](const AlgebraHandle& a) { return a->family() == Family::cr && a->params().q > 0; },
       cr_null},
  };
  return entries;
}

}  // namespace

bool LemmaReport::pass() const {
  for (const auto& c : claims)
    if (!c.pass) return false;
  return true;
}

Json LemmaReport::to_json() const {
  Json cl = Json::array();
  for (const auto& c : claims)
    cl.push_back({{"id", c.id}, {"statement", c.statement}, {"pass", c.pass}, {"evidence", c.evidence}});
  return {{"lemma", lemma}, {"algebra", algebra}, {"isotropy", isotropy}, {"pass", pass()}, {"claims", cl}};
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

bool lemma_applies(const std::string& id, const AlgebraHandle& algebra) {
  for (const auto& e : registry())
    if (e.id == id) return e.fits(algebra);
  return false;
}

LemmaReport verify_lemma(const std::string& id, const AlgebraHandle& algebra, std::uint64_t seed) {
  for (const auto& e : registry()) {
    if (e.id != id) continue;
    if (!e.fits(algebra)) throw Error(ErrorCode::family_unsupported, "lemma " + id + " does not apply to " + algebra->label());
    LemmaReport report{id, algebra->label(), e.tag, {}};
    Claims claims(report);
    e.run(standard_isotropy(algebra, e.tag), seed, claims);
    return report;
  }
  throw Error(ErrorCode::unknown_lemma, "'" + id + "'");
}

}  // namespace parabolic::cli
