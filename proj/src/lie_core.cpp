#include "parabolic/lie_core.hpp"

#include <sstream>

namespace parabolic {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::unsupported_scalar: return "unsupported-scalar";
    case ErrorCode::algebra_mismatch: return "algebra-mismatch";
    case ErrorCode::degree_out_of_range: return "degree-out-of-range";
    case ErrorCode::not_contact: return "not-contact";
    case ErrorCode::not_in_p_plus: return "not-in-p-plus";
    case ErrorCode::not_in_g_minus: return "not-in-g-minus";
    case ErrorCode::zero_input: return "zero-input";
    case ErrorCode::no_negative_representative: return "no-negative-representative";
    case ErrorCode::empty: return "empty";
    case ErrorCode::unsupported_rep: return "unsupported-rep-for-family";
    case ErrorCode::not_diagonalizable: return "not-diagonalizable";
    case ErrorCode::unbounded_compact_part: return "unbounded-compact-part";
    case ErrorCode::outside_cell: return "outside-cell";
    case ErrorCode::domain: return "domain";
    case ErrorCode::schedule_too_short: return "schedule-too-short";
    case ErrorCode::divergent_adjoint: return "divergent-adjoint";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::validation_error: return "validation-error";
    case ErrorCode::unknown_lemma: return "unknown-lemma";
    case ErrorCode::family_unsupported: return "family-unsupported";
  }
  return "unknown";
}

const char* scalar_tag_name(ScalarTag tag) {
  switch (tag) {
    case ScalarTag::rational: return "rational";
    case ScalarTag::gaussian_rational: return "gaussian-rational";
    case ScalarTag::float64: return "float64";
    case ScalarTag::complex128: return "complex128";
  }
  return "unknown";
}

std::optional<ScalarTag> parse_scalar_tag(const std::string& name) {
  for (auto t : {ScalarTag::rational, ScalarTag::gaussian_rational, ScalarTag::float64, ScalarTag::complex128})
    if (name == scalar_tag_name(t)) return t;
  return std::nullopt;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::grassmannian: return "grassmannian";
    case Family::quaternionic: return "quaternionic";
    case Family::cr: return "cr";
    case Family::sl2: return "sl2";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (auto f : {Family::grassmannian, Family::quaternionic, Family::cr, Family::sl2})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

namespace {

const Rational& flat_value(const QMatrix& m, std::size_t pos) {
  std::size_t n = m.cols();
  std::size_t cell = pos / 2;
  const Gauss& z = m(cell / n, cell % n);
  return (pos % 2) ? z.im : z.re;
}

QMatrix unit(std::size_t n, std::size_t r, std::size_t c, const Gauss& v) {
  QMatrix m(n, n);
  m(r, c) = v;
  return m;
}

bool same_algebra(const AlgebraHandle& a, const AlgebraHandle& b) {
  return a == b || (a && b && a->label() == b->label());
}

}  // namespace

// Quaternion units as 2x2 complex blocks [[a, -conj b], [b, conj a]].
QMatrix quaternion_unit(int u) {
  QMatrix q(2, 2);
  const Gauss i = gauss_i();
  switch (u) {
    case 0: q(0, 0) = 1; q(1, 1) = 1; break;
    case 1: q(0, 0) = i; q(1, 1) = -i; break;
    case 2: q(0, 1) = -1; q(1, 0) = 1; break;
    default: q(0, 1) = -i; q(1, 0) = -i; break;
  }
  return q;
}

std::string GradedAlgebra::label() const {
  std::ostringstream out;
  out << family_name(family_);
  switch (family_) {
    case Family::grassmannian: out << "(" << params_.m << "," << params_.n << ")"; break;
    case Family::quaternionic: out << "(" << params_.n << ")"; break;
    case Family::cr: out << "(" << params_.p << "," << params_.q << ")"; break;
    case Family::sl2: break;
  }
  return out.str();
}

int GradedAlgebra::entry_degree(std::size_t r, std::size_t c) const {
  return block_of_[c] - block_of_[r];
}

const GradedAlgebra::DegreeData& GradedAlgebra::data(int degree) const {
  auto it = degrees_.find(degree);
  if (it == degrees_.end())
    throw Error(ErrorCode::degree_out_of_range, "degree " + std::to_string(degree) + " not in " + label());
  return it->second;
}

const std::vector<QMatrix>& GradedAlgebra::basis(int degree) const { return data(degree).basis; }
std::size_t GradedAlgebra::dim(int degree) const { return data(degree).basis.size(); }

std::size_t GradedAlgebra::dim() const {
  std::size_t d = 0;
  for (const auto& [deg, dd] : degrees_) d += dd.basis.size();
  return d;
}

std::size_t GradedAlgebra::offset(int degree) const {
  std::size_t off = 0;
  for (const auto& [deg, dd] : degrees_) {
    if (deg == degree) return off;
    off += dd.basis.size();
  }
  throw Error(ErrorCode::degree_out_of_range, "degree " + std::to_string(degree));
}

void GradedAlgebra::finalize() {
  std::size_t cells = 2 * ambient_ * ambient_;
  for (auto& [deg, dd] : degrees_) {
    std::size_t m = dd.basis.size();
    RatMatrix rows(m, cells);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t pos = 0; pos < cells; ++pos) rows(k, pos) = flat_value(dd.basis[k], pos);
    auto pivots = rref(rows);
    if (pivots.size() != m) throw std::logic_error("dependent basis in degree " + std::to_string(deg));
    dd.positions = pivots;
    RatMatrix s(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) s(i, j) = flat_value(dd.basis[j], pivots[i]);
    auto inv = inverse(s);
    if (!inv) throw std::logic_error("singular coordinate system");
    dd.solve = *inv;
  }
}

std::optional<std::vector<Rational>> GradedAlgebra::coordinates(const QMatrix& m, int degree) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) return std::nullopt;
  const DegreeData& dd = data(degree);
  std::vector<Rational> x(dd.positions.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = flat_value(m, dd.positions[i]);
  std::vector<Rational> c = dd.solve * x;
  if (from_coordinates(degree, c) != m) return std::nullopt;
  return c;
}

std::optional<std::vector<Rational>> GradedAlgebra::coordinates(const QMatrix& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) return std::nullopt;
  std::vector<Rational> all;
  for (const auto& [deg, dd] : degrees_) {
    QMatrix part(ambient_, ambient_);
    for (std::size_t r = 0; r < ambient_; ++r)
      for (std::size_t c = 0; c < ambient_; ++c)
        if (entry_degree(r, c) == deg) part(r, c) = m(r, c);
    auto cd = coordinates(part, deg);
    if (!cd) return std::nullopt;
    all.insert(all.end(), cd->begin(), cd->end());
  }
  // entries of degree beyond the depth have no basis and must vanish
  for (std::size_t r = 0; r < ambient_; ++r)
    for (std::size_t c = 0; c < ambient_; ++c)
      if (!degrees_.count(entry_degree(r, c)) && !m(r, c).is_zero()) return std::nullopt;
  return all;
}

QMatrix GradedAlgebra::from_coordinates(int degree, const std::vector<Rational>& coords) const {
  const DegreeData& dd = data(degree);
  if (coords.size() != dd.basis.size()) throw std::invalid_argument("coordinate length mismatch");
  QMatrix out(ambient_, ambient_);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (sgn(coords[k]) != 0) out += Gauss(coords[k]) * dd.basis[k];
  return out;
}

QMatrix GradedAlgebra::from_coordinates(const std::vector<Rational>& coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("coordinate length mismatch");
  QMatrix out(ambient_, ambient_);
  std::size_t off = 0;
  for (const auto& [deg, dd] : degrees_) {
    std::vector<Rational> part(coords.begin() + off, coords.begin() + off + dd.basis.size());
    out += from_coordinates(deg, part);
    off += dd.basis.size();
  }
  return out;
}

bool GradedAlgebra::satisfies_constraints(const QMatrix& m) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) return false;
  if (!m.trace().is_zero()) return false;
  switch (family_) {
    case Family::grassmannian:
    case Family::sl2:
      return m.is_real();
    case Family::quaternionic: {
      QMatrix j(ambient_, ambient_);
      for (std::size_t b = 0; b < ambient_; b += 2) {
        j(b, b + 1) = -1;
        j(b + 1, b) = 1;
      }
      return m * j == j * m.conj();
    }
    case Family::cr: {
      const QMatrix& h = *ambient_form_;
      return (m.adjoint() * h + h * m).is_zero();
    }
  }
  return false;
}

Rational GradedAlgebra::killing_constant() const { return Rational(2 * static_cast<long>(ambient_)); }

AlgebraHandle build_algebra(Family family, const FamilyParams& params, ScalarField scalar) {
  auto alg = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
  alg->family_ = family;
  alg->scalar_ = scalar;
  const Gauss i = gauss_i();

  auto two_block = [&](std::size_t a, std::size_t b) {
    alg->blocks_ = {a, b};
    alg->ambient_ = a + b;
    alg->depth_ = 1;
    alg->block_of_.assign(a + b, 1);
    for (std::size_t k = 0; k < a; ++k) alg->block_of_[k] = 0;
  };

  switch (family) {
    case Family::sl2:
    case Family::grassmannian: {
      FamilyParams p = params;
      if (family == Family::sl2) p = FamilyParams{1, 1, 0, 0};
      if (p.m < 1 || p.n < 1)
        throw Error(ErrorCode::invalid_params, "grassmannian needs m, n >= 1");
      alg->params_ = family == Family::sl2 ? FamilyParams{} : p;
      std::size_t m = p.m, n = p.n, big = m + n;
      two_block(m, n);
      auto& lower = alg->degrees_[-1].basis;
      for (std::size_t r = m; r < big; ++r)
        for (std::size_t c = 0; c < m; ++c) lower.push_back(unit(big, r, c, 1));
      auto& mid = alg->degrees_[0].basis;
      for (std::size_t r = 0; r < big; ++r)
        for (std::size_t c = 0; c < big; ++c) {
          if (alg->block_of_[r] != alg->block_of_[c]) continue;
          if (r != c) {
            mid.push_back(unit(big, r, c, 1));
          } else if (r + 1 < big) {
            QMatrix d = unit(big, r, r, 1);
            d(r + 1, r + 1) = -1;
            mid.push_back(d);
          }
        }
      auto& upper = alg->degrees_[1].basis;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = m; c < big; ++c) upper.push_back(unit(big, r, c, 1));
      break;
    }
    case Family::quaternionic: {
      if (params.n < 1) throw Error(ErrorCode::invalid_params, "quaternionic needs n >= 1");
      if (!scalar.complex())
        throw Error(ErrorCode::unsupported_scalar, "quaternionic needs gaussian-rational or complex128");
      alg->params_ = FamilyParams{0, params.n, 0, 0};
      std::size_t qn = params.n + 1, big = 2 * qn;
      two_block(2, 2 * params.n);
      auto qblock = [&](std::size_t r, std::size_t c, int u) {
        QMatrix m(big, big);
        m.set_block(2 * r, 2 * c, quaternion_unit(u));
        return m;
      };
      auto qdeg = [](std::size_t r, std::size_t c) { return (c > 0 ? 1 : 0) - (r > 0 ? 1 : 0); };
      for (int deg = -1; deg <= 1; ++deg) {
        auto& out = alg->degrees_[deg].basis;
        for (std::size_t r = 0; r < qn; ++r)
          for (std::size_t c = 0; c < qn; ++c) {
            if (qdeg(r, c) != deg) continue;
            for (int u = 0; u < 4; ++u) {
              if (r == c && u == 0) {
                if (r + 1 == qn) continue;
                QMatrix d = qblock(r, r, 0);
                d.set_block(2 * r + 2, 2 * r + 2, Gauss(-1) * quaternion_unit(0));
                out.push_back(d);
              } else {
                out.push_back(qblock(r, c, u));
              }
            }
          }
      }
      break;
    }
    case Family::cr: {
      if (params.p < params.q || params.q < 0 || params.p + params.q < 1)
        throw Error(ErrorCode::invalid_params, "cr needs p >= q >= 0 and p + q >= 1");
      if (!scalar.complex())
        throw Error(ErrorCode::unsupported_scalar, "cr needs gaussian-rational or complex128");
      alg->params_ = FamilyParams{0, 0, params.p, params.q};
      std::size_t n = params.p + params.q, big = n + 2;
      alg->blocks_ = {1, n, 1};
      alg->ambient_ = big;
      alg->depth_ = 2;
      alg->block_of_.assign(big, 1);
      alg->block_of_[0] = 0;
      alg->block_of_[big - 1] = 2;
      QMatrix sig(n, n);
      for (std::size_t k = 0; k < n; ++k) sig(k, k) = k < static_cast<std::size_t>(params.p) ? 1 : -1;
      QMatrix h(big, big);
      h(0, big - 1) = 1;
      h(big - 1, 0) = 1;
      h.set_block(1, 1, sig);
      alg->signature_ = sig;
      alg->ambient_form_ = h;
      auto s = [&](std::size_t k) { return sig(k, k); };

      alg->degrees_[-2].basis.push_back(unit(big, big - 1, 0, i));
      auto& lower = alg->degrees_[-1].basis;
      for (std::size_t j = 0; j < n; ++j)
        for (const Gauss& u : {Gauss(1), i}) {
          QMatrix m = unit(big, 1 + j, 0, u);
          m(big - 1, 1 + j) = -(u.conj() * s(j));
          lower.push_back(m);
        }
      auto& mid = alg->degrees_[0].basis;
      {
        QMatrix a = unit(big, 0, 0, 1);
        a(big - 1, big - 1) = -1;
        mid.push_back(a);
        QMatrix b = unit(big, 0, 0, i);
        b(big - 1, big - 1) = i;
        Gauss shift = Gauss(Rational(0), frac(-2, static_cast<long>(n)));
        for (std::size_t k = 0; k < n; ++k) b(1 + k, 1 + k) = shift;
        mid.push_back(b);
      }
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) {
          // I * K with K skew-Hermitian: real antisymmetric and imaginary symmetric parts
          QMatrix re(big, big);
          re(1 + j, 1 + l) = s(j);
          re(1 + l, 1 + j) = -s(l);
          mid.push_back(re);
          QMatrix im(big, big);
          im(1 + j, 1 + l) = s(j) * i;
          im(1 + l, 1 + j) = s(l) * i;
          mid.push_back(im);
        }
      for (std::size_t j = 0; j + 1 < n; ++j) {
        QMatrix d(big, big);
        d(1 + j, 1 + j) = i;
        d(2 + j, 2 + j) = -i;
        mid.push_back(d);
      }
      auto& upper = alg->degrees_[1].basis;
      for (std::size_t j = 0; j < n; ++j)
        for (const Gauss& u : {Gauss(1), i}) {
          QMatrix m = unit(big, 0, 1 + j, u);
          m(1 + j, big - 1) = -(s(j) * u.conj());
          upper.push_back(m);
        }
      alg->degrees_[2].basis.push_back(unit(big, 0, big - 1, i));
      break;
    }
  }
  alg->finalize();
  return alg;
}

// ---------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(AlgebraHandle algebra, QMatrix matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  if (!algebra_->contains(matrix_))
    throw Error(ErrorCode::validation_error, "matrix is not an element of " + algebra_->label());
}

AlgebraElement AlgebraElement::trusted(AlgebraHandle algebra, QMatrix matrix) {
  AlgebraElement e;
  e.algebra_ = std::move(algebra);
  e.matrix_ = std::move(matrix);
  return e;
}

AlgebraElement AlgebraElement::zero(const AlgebraHandle& algebra) {
  return trusted(algebra, QMatrix(algebra->ambient_size(), algebra->ambient_size()));
}

AlgebraElement AlgebraElement::from_coordinates(const AlgebraHandle& algebra, int degree,
                                                const std::vector<Rational>& coords) {
  return trusted(algebra, algebra->from_coordinates(degree, coords));
}

AlgebraElement AlgebraElement::basis_element(const AlgebraHandle& algebra, int degree, std::size_t index) {
  return trusted(algebra, algebra->basis(degree).at(index));
}

std::vector<Rational> AlgebraElement::coordinates() const {
  auto c = algebra_->coordinates(matrix_);
  if (!c) throw std::logic_error("element left its algebra");
  return *c;
}

std::vector<Rational> AlgebraElement::coordinates(int degree) const {
  auto part = grading_component(*this, degree);
  auto c = algebra_->coordinates(part.matrix(), degree);
  if (!c) throw std::logic_error("element left its algebra");
  return *c;
}

bool AlgebraElement::in_degrees(int lo, int hi) const {
  std::size_t n = algebra_->ambient_size();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (matrix_(r, c).is_zero()) continue;
      int d = algebra_->entry_degree(r, c);
      if (d < lo || d > hi) return false;
    }
  return true;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (!same_algebra(algebra_, o.algebra_)) throw Error(ErrorCode::algebra_mismatch, "sum");
  matrix_ += o.matrix_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (!same_algebra(algebra_, o.algebra_)) throw Error(ErrorCode::algebra_mismatch, "difference");
  matrix_ -= o.matrix_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& s) {
  matrix_ *= Gauss(s);
  return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (!same_algebra(x.algebra(), y.algebra())) throw Error(ErrorCode::algebra_mismatch, "bracket");
  return AlgebraElement::trusted(x.algebra(), commutator(x.matrix(), y.matrix()));
}

AlgebraElement grading_component(const AlgebraElement& y, int degree) {
  const auto& alg = y.algebra();
  if (degree < -alg->depth() || degree > alg->depth())
    throw Error(ErrorCode::degree_out_of_range, "degree " + std::to_string(degree));
  std::size_t n = alg->ambient_size();
  QMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (alg->entry_degree(r, c) == degree) out(r, c) = y.matrix()(r, c);
  return AlgebraElement::trusted(alg, std::move(out));
}

GradingDecomposition decompose(const AlgebraElement& y) {
  GradingDecomposition d;
  int k = y.algebra()->depth();
  for (int i = -k; i <= k; ++i) d.components.emplace(i, grading_component(y, i));
  return d;
}

AlgebraElement grading_element(const AlgebraHandle& algebra) {
  std::size_t n = algebra->ambient_size();
  QMatrix a(n, n);
  if (algebra->family() == Family::cr) {
    a(0, 0) = 1;
    a(n - 1, n - 1) = -1;
  } else {
    long first = static_cast<long>(algebra->block_partition()[0]);
    long second = static_cast<long>(algebra->block_partition()[1]);
    for (std::size_t k = 0; k < n; ++k)
      a(k, k) = static_cast<long>(k) < first ? frac(second, first + second)
                                             : frac(-first, first + second);
  }
  return AlgebraElement::trusted(algebra, std::move(a));
}

Rational pairing(const AlgebraElement& z, const AlgebraElement& x) {
  if (!same_algebra(z.algebra(), x.algebra())) throw Error(ErrorCode::algebra_mismatch, "pairing");
  if (!z.in_p_plus()) throw Error(ErrorCode::not_in_p_plus, "pairing expects Z in p+");
  if (!x.in_g_minus()) throw Error(ErrorCode::not_in_g_minus, "pairing expects X in g-");
  Gauss t = (z.matrix() * x.matrix()).trace();
  if (!t.is_real()) throw std::logic_error("trace pairing is not real");
  return t.re;
}

Rational levi_form(const AlgebraElement& x, const AlgebraElement& y) {
  if (!same_algebra(x.algebra(), y.algebra())) throw Error(ErrorCode::algebra_mismatch, "levi_form");
  if (x.algebra()->depth() != 2) throw Error(ErrorCode::not_contact, x.algebra()->label() + " has depth 1");
  if (!x.in_degree(-1) || !y.in_degree(-1)) throw Error(ErrorCode::not_in_g_minus, "levi_form expects g_{-1}");
  auto c = x.algebra()->coordinates(commutator(x.matrix(), y.matrix()), -2);
  if (!c) throw std::logic_error("[g_{-1}, g_{-1}] outside g_{-2}");
  return (*c)[0];
}

QMatrix cr_slot(const AlgebraElement& y) {
  const auto& alg = y.algebra();
  if (alg->family() != Family::cr) throw Error(ErrorCode::family_unsupported, "cr_slot");
  std::size_t n = alg->ambient_size() - 2;
  if (y.in_degree(-1)) return y.matrix().block(1, 0, n, 1);
  if (y.in_degree(1)) return y.matrix().block(0, 1, 1, n);
  throw Error(ErrorCode::degree_out_of_range, "cr_slot expects g_{-1} or g_1");
}

AlgebraElement cr_from_slot(const AlgebraHandle& algebra, int degree, const QMatrix& slot) {
  if (algebra->family() != Family::cr) throw Error(ErrorCode::family_unsupported, "cr_from_slot");
  std::size_t n = algebra->ambient_size() - 2, big = n + 2;
  const QMatrix& sig = *algebra->hermitian_form();
  QMatrix m(big, big);
  if (degree == -1) {
    for (std::size_t j = 0; j < n; ++j) {
      m(1 + j, 0) = slot(j, 0);
      m(big - 1, 1 + j) = -(slot(j, 0).conj() * sig(j, j));
    }
  } else if (degree == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      m(0, 1 + j) = slot(0, j);
      m(1 + j, big - 1) = -(sig(j, j) * slot(0, j).conj());
    }
  } else {
    throw Error(ErrorCode::degree_out_of_range, "cr_from_slot expects degree +-1");
  }
  return AlgebraElement::trusted(algebra, std::move(m));
}

AlgebraElement complex_structure(const AlgebraElement& y) {
  const auto& alg = y.algebra();
  if (alg->family() != Family::cr) throw Error(ErrorCode::family_unsupported, "complex structure");
  int degree = y.in_degree(-1) ? -1 : (y.in_degree(1) ? 1 : 0);
  if (degree == 0) throw Error(ErrorCode::degree_out_of_range, "J acts on g_{-1} and g_1");
  QMatrix slot = cr_slot(y);
  slot *= gauss_i();
  return cr_from_slot(alg, degree, slot);
}

QMatrix offdiagonal_block(const AlgebraElement& y) {
  const auto& alg = y.algebra();
  if (alg->depth() != 1) throw Error(ErrorCode::family_unsupported, "offdiagonal_block needs a |1|-grading");
  std::size_t a = alg->block_partition()[0], b = alg->block_partition()[1];
  if (y.in_degree(1)) return y.matrix().block(0, a, a, b);
  if (y.in_degree(-1)) return y.matrix().block(a, 0, b, a);
  throw Error(ErrorCode::degree_out_of_range, "offdiagonal_block expects g_1 or g_{-1}");
}

AlgebraElement from_offdiagonal_block(const AlgebraHandle& algebra, int degree, const QMatrix& block) {
  if (algebra->depth() != 1) throw Error(ErrorCode::family_unsupported, "from_offdiagonal_block");
  std::size_t a = algebra->block_partition()[0], b = algebra->block_partition()[1];
  QMatrix m(a + b, a + b);
  if (degree == 1 && block.rows() == a && block.cols() == b) {
    m.set_block(0, a, block);
  } else if (degree == -1 && block.rows() == b && block.cols() == a) {
    m.set_block(a, 0, block);
  } else {
    throw Error(ErrorCode::invalid_params, "block shape does not match degree");
  }
  return AlgebraElement(algebra, std::move(m));
}

RatMatrix ad_matrix(const AlgebraElement& x, int from, int to) {
  const auto& alg = x.algebra();
  const auto& src = alg->basis(from);
  RatMatrix out(alg->dim(to), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto c = alg->coordinates(commutator(x.matrix(), src[j]), to);
    if (!c) throw std::logic_error("ad(x) does not map g_" + std::to_string(from) + " into g_" + std::to_string(to));
    for (std::size_t r = 0; r < c->size(); ++r) out(r, j) = (*c)[r];
  }
  return out;
}

}  // namespace parabolic
