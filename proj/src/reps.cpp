#include <map>

#include "parabolic/spectra.hpp"

namespace parabolic {

struct TensorRep::Node {
  RepKind kind = RepKind::adjoint;
  std::string name;
  AlgebraHandle algebra;
  std::size_t dim = 0;
  int lo = 0;
  int hi = 0;
  std::size_t block = 0;
  std::vector<TensorRep> factors;
  std::vector<SparseVec> basis;
  std::vector<std::size_t> pivots;
  RatMatrix solve;
};

namespace {

using Acc = std::map<std::size_t, Rational>;

SparseVec from_acc(const Acc& acc) {
  SparseVec out;
  for (const auto& [k, v] : acc)
    if (sgn(v) != 0) out.emplace_back(k, v);
  return out;
}

std::size_t wedge_index(std::size_t i, std::size_t j, std::size_t n) { return i * n - i * (i + 1) / 2 + (j - i - 1); }
std::size_t sym_index(std::size_t i, std::size_t j, std::size_t n) { return i * n - i * (i - 1) / 2 + (j - i); }

/// Adds s * (e_i ^ e_j) with sign handling.
void add_wedge(Acc& acc, std::size_t i, std::size_t j, const Rational& s, std::size_t n) {
  if (i == j) return;
  if (i < j) acc[wedge_index(i, j, n)] += s;
  else acc[wedge_index(j, i, n)] -= s;
}

void add_sym(Acc& acc, std::size_t i, std::size_t j, const Rational& s, std::size_t n) {
  if (i <= j) acc[sym_index(i, j, n)] += s;
  else acc[sym_index(j, i, n)] += s;
}

void require_g0(const AlgebraElement& a) {
  if (!a.in_degree(0)) throw Error(ErrorCode::invalid_params, "representations are acted on by g_0 elements");
}

std::string join_name(const std::string& a, const std::string& b) { return "(" + a + ") x (" + b + ")"; }

}  // namespace

TensorRep TensorRep::adjoint(const AlgebraHandle& algebra, int lo, int hi) {
  if (lo > hi || lo < -algebra->depth() || hi > algebra->depth())
    throw Error(ErrorCode::degree_out_of_range, "adjoint degree range");
  auto n = std::make_shared<Node>();
  n->kind = RepKind::adjoint;
  n->algebra = algebra;
  n->lo = lo;
  n->hi = hi;
  for (int d = lo; d <= hi; ++d) n->dim += algebra->dim(d);
  n->name = lo == hi ? "g_" + std::to_string(lo) : "g_" + std::to_string(lo) + "..g_" + std::to_string(hi);
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::standard(const AlgebraHandle& algebra, std::size_t block) {
  if (algebra->family() != Family::grassmannian && algebra->family() != Family::sl2)
    throw Error(ErrorCode::unsupported_rep, "standard blocks exist for real sl families only");
  if (block > 1) throw Error(ErrorCode::invalid_params, "block index is 0 or 1");
  auto n = std::make_shared<Node>();
  n->kind = RepKind::standard;
  n->algebra = algebra;
  n->block = block;
  n->dim = algebra->block_partition()[block];
  n->name = "R^" + std::to_string(n->dim);
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::dual(const TensorRep& v) {
  auto n = std::make_shared<Node>();
  n->kind = RepKind::dual;
  n->algebra = v.algebra();
  n->dim = v.dimension();
  n->factors = {v};
  n->name = v.name() + "*";
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::tensor(const TensorRep& a, const TensorRep& b) {
  auto n = std::make_shared<Node>();
  n->kind = RepKind::tensor;
  n->algebra = a.algebra();
  n->dim = a.dimension() * b.dimension();
  n->factors = {a, b};
  n->name = join_name(a.name(), b.name());
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::exterior_square(const TensorRep& v) {
  auto n = std::make_shared<Node>();
  n->kind = RepKind::exterior_square;
  n->algebra = v.algebra();
  n->dim = v.dimension() * (v.dimension() - 1) / 2;
  n->factors = {v};
  n->name = "L2(" + v.name() + ")";
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::symmetric_square(const TensorRep& v) {
  auto n = std::make_shared<Node>();
  n->kind = RepKind::symmetric_square;
  n->algebra = v.algebra();
  n->dim = v.dimension() * (v.dimension() + 1) / 2;
  n->factors = {v};
  n->name = "S2(" + v.name() + ")";
  TensorRep r;
  r.node_ = n;
  return r;
}

TensorRep TensorRep::sub(const TensorRep& parent, const std::vector<SparseVec>& basis) {
  auto n = std::make_shared<Node>();
  n->kind = RepKind::sub;
  n->algebra = parent.algebra();
  n->dim = basis.size();
  n->factors = {parent};
  n->basis = basis;
  n->name = "sub(" + parent.name() + ")";
  std::size_t pd = parent.dimension();
  TensorRep r;
  r.node_ = n;
  if (basis.empty()) return r;
  RatMatrix rows(basis.size(), pd);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& [k, v] : basis[i]) rows(i, k) = v;
  RatMatrix reduced = rows;
  n->pivots = rref(reduced);
  if (n->pivots.size() != basis.size()) throw Error(ErrorCode::invalid_params, "sub-rep basis is dependent");
  RatMatrix restricted(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < n->pivots.size(); ++k) restricted(i, k) = rows(i, n->pivots[k]);
  auto inv = inverse(restricted);
  if (!inv) throw std::logic_error("pivot block of a sub-rep basis is singular");
  n->solve = *inv;
  return r;
}

const std::string& TensorRep::name() const { return node_->name; }

TensorRep TensorRep::named(std::string name) const {
  auto n = std::make_shared<Node>(*node_);
  n->name = std::move(name);
  TensorRep r;
  r.node_ = n;
  return r;
}

const AlgebraHandle& TensorRep::algebra() const { return node_->algebra; }
std::size_t TensorRep::dimension() const { return node_->dim; }
RepKind TensorRep::kind() const { return node_->kind; }
const std::vector<TensorRep>& TensorRep::factors() const { return node_->factors; }
const std::vector<SparseVec>& TensorRep::sub_basis() const { return node_->basis; }
int TensorRep::lo_degree() const { return node_->lo; }
int TensorRep::hi_degree() const { return node_->hi; }
std::size_t TensorRep::block() const { return node_->block; }

SparseVec TensorRep::embed(const SparseVec& v) const {
  if (kind() != RepKind::sub) return v;
  SparseVec out;
  for (const auto& [k, c] : v) out = add_scaled(out, node_->basis[k], c);
  return out;
}

std::optional<SparseVec> TensorRep::restrict(const SparseVec& parent_vector) const {
  if (kind() != RepKind::sub) return parent_vector;
  const auto& n = *node_;
  std::size_t k = n.basis.size();
  std::vector<Rational> at(k);
  for (const auto& [idx, v] : parent_vector) {
    for (std::size_t p = 0; p < k; ++p)
      if (n.pivots[p] == idx) at[p] = v;
  }
  std::vector<Rational> coeffs(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t p = 0; p < k; ++p)
      if (sgn(at[p]) != 0) coeffs[i] += at[p] * n.solve(p, i);
  SparseVec c = to_sparse(coeffs);
  if (embed(c) != parent_vector) return std::nullopt;
  return c;
}

SparseMatrix TensorRep::action(const AlgebraElement& a) const {
  require_g0(a);
  const auto& n = *node_;
  SparseMatrix out(n.dim, n.dim);
  switch (n.kind) {
    case RepKind::adjoint: {
      std::size_t col = 0;
      for (int d = n.lo; d <= n.hi; ++d)
        for (const auto& b : n.algebra->basis(d)) {
          SparseVec v = adjoint_vector(*this, AlgebraElement::trusted(n.algebra, commutator(a.matrix(), b)));
          out.column(col++) = v;
        }
      break;
    }
    case RepKind::standard: {
      std::size_t off = n.block == 0 ? 0 : n.algebra->block_partition()[0];
      for (std::size_t c = 0; c < n.dim; ++c) {
        Acc acc;
        for (std::size_t r = 0; r < n.dim; ++r) {
          const Gauss& x = a.matrix()(off + r, off + c);
          if (!x.is_real()) throw Error(ErrorCode::unsupported_rep, "standard block of a non-real element");
          acc[r] = x.re;
        }
        out.column(c) = from_acc(acc);
      }
      break;
    }
    case RepKind::dual: {
      RatMatrix m = n.factors[0].action(a).to_dense();
      for (std::size_t c = 0; c < n.dim; ++c) {
        Acc acc;
        for (std::size_t r = 0; r < n.dim; ++r) acc[r] = -m(c, r);
        out.column(c) = from_acc(acc);
      }
      break;
    }
    case RepKind::tensor: {
      SparseMatrix ra = n.factors[0].action(a), rb = n.factors[1].action(a);
      std::size_t db = n.factors[1].dimension();
      for (std::size_t i = 0; i < n.factors[0].dimension(); ++i)
        for (std::size_t j = 0; j < db; ++j) {
          Acc acc;
          for (const auto& [k, v] : ra.column(i)) acc[k * db + j] += v;
          for (const auto& [k, v] : rb.column(j)) acc[i * db + k] += v;
          out.column(i * db + j) = from_acc(acc);
        }
      break;
    }
    case RepKind::exterior_square:
    case RepKind::symmetric_square: {
      bool wedge_kind = n.kind == RepKind::exterior_square;
      SparseMatrix rv = n.factors[0].action(a);
      std::size_t d = n.factors[0].dimension();
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = wedge_kind ? i + 1 : i; j < d; ++j) {
          Acc acc;
          for (const auto& [k, v] : rv.column(i)) {
            if (wedge_kind) add_wedge(acc, k, j, v, d);
            else add_sym(acc, k, j, v, d);
          }
          for (const auto& [k, v] : rv.column(j)) {
            if (wedge_kind) add_wedge(acc, i, k, v, d);
            else add_sym(acc, i, k, v, d);
          }
          out.column(wedge_kind ? wedge_index(i, j, d) : sym_index(i, j, d)) = from_acc(acc);
        }
      break;
    }
    case RepKind::sub: {
      SparseMatrix rp = n.factors[0].action(a);
      for (std::size_t c = 0; c < n.dim; ++c) {
        auto image = restrict(rp.apply(n.basis[c]));
        if (!image) throw Error(ErrorCode::invalid_params, "sub-rep is not invariant under the action");
        out.column(c) = *image;
      }
      break;
    }
  }
  return out;
}

SparseVec kron(const SparseVec& a, const SparseVec& b, std::size_t dim_b) {
  SparseVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out.emplace_back(i * dim_b + j, x * y);
  return out;
}

SparseVec wedge(const SparseVec& a, const SparseVec& b, std::size_t dim) {
  Acc acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_wedge(acc, i, j, x * y, dim);
  return from_acc(acc);
}

SparseVec symmetric_product(const SparseVec& a, const SparseVec& b, std::size_t dim) {
  Acc acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_sym(acc, i, j, x * y, dim);
  return from_acc(acc);
}

SparseVec block_tensor(const AlgebraElement& x) {
  const auto& alg = x.algebra();
  if (alg->family() != Family::grassmannian && alg->family() != Family::sl2)
    throw Error(ErrorCode::unsupported_rep, "block tensors exist for real sl families only");
  QMatrix b = offdiagonal_block(x);
  if (!x.in_degree(-1)) throw Error(ErrorCode::not_in_g_minus, "block_tensor expects g_{-1}");
  std::size_t n = b.rows(), m = b.cols();
  Acc acc;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t r = 0; r < n; ++r) acc[a * n + r] = b(r, a).re;
  return from_acc(acc);
}

SparseVec adjoint_vector(const TensorRep& rep, const AlgebraElement& y) {
  if (rep.kind() != RepKind::adjoint) throw Error(ErrorCode::unsupported_rep, "adjoint_vector expects an adjoint rep");
  const auto& alg = rep.algebra();
  std::vector<Rational> out;
  for (int d = rep.lo_degree(); d <= rep.hi_degree(); ++d) {
    auto part = grading_component(y, d);
    auto c = alg->coordinates(part.matrix(), d);
    if (!c) throw std::logic_error("element left its algebra");
    out.insert(out.end(), c->begin(), c->end());
  }
  for (int d = -alg->depth(); d <= alg->depth(); ++d)
    if ((d < rep.lo_degree() || d > rep.hi_degree()) && !grading_component(y, d).is_zero())
      throw Error(ErrorCode::degree_out_of_range, "element has components outside " + rep.name());
  return to_sparse(out);
}

AlgebraElement adjoint_element(const TensorRep& rep, const SparseVec& v) {
  if (rep.kind() != RepKind::adjoint) throw Error(ErrorCode::unsupported_rep, "adjoint_element expects an adjoint rep");
  const auto& alg = rep.algebra();
  auto dense = to_dense(v, rep.dimension());
  auto out = AlgebraElement::zero(alg);
  std::size_t off = 0;
  for (int d = rep.lo_degree(); d <= rep.hi_degree(); ++d) {
    std::vector<Rational> c(dense.begin() + off, dense.begin() + off + alg->dim(d));
    out += AlgebraElement::from_coordinates(alg, d, c);
    off += alg->dim(d);
  }
  return out;
}

namespace {

/// Basis of the +1 or -1 eigenspace of L2(J) on L2(g_1) for cr.
std::vector<SparseVec> j_split(const AlgebraHandle& alg, const TensorRep& wedge_rep, int sign) {
  const auto& basis = alg->basis(1);
  std::size_t d = basis.size();
  std::vector<SparseVec> jcols;
  for (const auto& b : basis) {
    auto jb = complex_structure(AlgebraElement::trusted(alg, b));
    jcols.push_back(to_sparse(jb.coordinates(1)));
  }
  std::size_t w = wedge_rep.dimension();
  RatMatrix m(w, w);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto col = wedge(jcols[i], jcols[j], d);
      std::size_t c = wedge_index(i, j, d);
      for (const auto& [r, v] : col) m(r, c) = v;
      m(c, c) -= Rational(sign);
    }
  std::vector<SparseVec> out;
  for (const auto& v : kernel(m)) out.push_back(to_sparse(v));
  return out;
}

TensorRep sl_rep(const AlgebraHandle& alg) {
  auto rn = TensorRep::standard(alg, 1);
  auto end = TensorRep::tensor(TensorRep::dual(rn), rn);
  std::size_t n = rn.dimension();
  std::vector<SparseVec> basis;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (r != c) basis.push_back({{r * n + c, Rational(1)}});
  for (std::size_t j = 0; j + 1 < n; ++j)
    basis.push_back({{j * n + j, Rational(1)}, {(j + 1) * n + j + 1, Rational(-1)}});
  return TensorRep::sub(end, basis).named("sl(" + std::to_string(n) + ")");
}

}  // namespace

std::vector<std::string> rep_names(const AlgebraHandle& algebra) {
  std::vector<std::string> names = {"adjoint-negative", "p-plus", "torsion-ambient", "curvature-ambient"};
  if (algebra->family() == Family::cr) {
    names.push_back("cr-torsion-ambient");
    names.push_back("cr-curvature-ambient");
  }
  if (algebra->family() == Family::grassmannian) {
    for (const char* n : {"grass-v1", "grass-v2", "grass-v", "grass-u"}) names.push_back(n);
  }
  return names;
}

TensorRep build_rep(const AlgebraHandle& algebra, const std::string& name) {
  int k = algebra->depth();
  auto unsupported = [&] {
    return Error(ErrorCode::unsupported_rep, "'" + name + "' for " + algebra->label());
  };
  if (name == "adjoint-negative") return TensorRep::adjoint(algebra, -k, -1).named(name);
  if (name == "p-plus") return TensorRep::adjoint(algebra, 1, k).named(name);
  if (name == "torsion-ambient")
    return TensorRep::tensor(TensorRep::exterior_square(TensorRep::adjoint(algebra, 1, 1)),
                             TensorRep::adjoint(algebra, -1, -1)).named(name);
  if (name == "curvature-ambient")
    return TensorRep::tensor(TensorRep::exterior_square(TensorRep::adjoint(algebra, 1, 1)),
                             TensorRep::adjoint(algebra, 0, 0)).named(name);
  if (name == "cr-torsion-ambient" || name == "cr-curvature-ambient") {
    if (algebra->family() != Family::cr) throw unsupported();
    auto w = TensorRep::exterior_square(TensorRep::adjoint(algebra, 1, 1));
    bool torsion = name == "cr-torsion-ambient";
    auto part = TensorRep::sub(w, j_split(algebra, w, torsion ? -1 : 1))
                    .named(torsion ? "L(0,2)(g_1)" : "L(1,1)(g_1)");
    return TensorRep::tensor(part, TensorRep::adjoint(algebra, torsion ? -1 : 0, torsion ? -1 : 0)).named(name);
  }
  if (name.rfind("grass-", 0) == 0) {
    if (algebra->family() != Family::grassmannian) throw unsupported();
    auto r2 = TensorRep::standard(algebra, 0);
    auto rn = TensorRep::standard(algebra, 1);
    auto v1 = TensorRep::tensor(TensorRep::symmetric_square(r2), TensorRep::dual(r2)).named("grass-v1");
    auto v2 = TensorRep::tensor(TensorRep::exterior_square(TensorRep::dual(rn)), rn).named("grass-v2");
    if (name == "grass-v1") return v1;
    if (name == "grass-v2") return v2;
    if (name == "grass-v") return TensorRep::tensor(v1, v2).named(name);
    if (name == "grass-u")
      return TensorRep::tensor(TensorRep::tensor(TensorRep::exterior_square(r2),
                                                 TensorRep::symmetric_square(TensorRep::dual(rn))),
                               sl_rep(algebra)).named(name);
    throw unsupported();
  }
  throw unsupported();
}

}  // namespace parabolic
