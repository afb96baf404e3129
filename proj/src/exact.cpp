#include "parabolic/exact.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace parabolic {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Gauss& Gauss::operator+=(const Gauss& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Gauss& Gauss::operator-=(const Gauss& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Gauss& Gauss::operator*=(const Gauss& o) {
  *this = *this * o;
  return *this;
}

Gauss& Gauss::operator/=(const Gauss& o) {
  *this = *this / o;
  return *this;
}

Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
Gauss operator-(const Gauss& a) { return Gauss(-a.re, -a.im); }

Gauss operator*(const Gauss& a, const Gauss& b) {
  if (a.is_real() && b.is_real()) return Gauss(a.re * b.re);
  return Gauss(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Gauss operator/(const Gauss& a, const Gauss& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (b.is_real()) return Gauss(a.re / b.re, a.im / b.re);
  Rational n = b.norm2();
  Gauss num = a * b.conj();
  return Gauss(num.re / n, num.im / n);
}

bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }

const Gauss& gauss_i() {
  static const Gauss i(Rational(0), Rational(1));
  return i;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Gauss& z) {
  if (z.is_real()) return to_string(z.re);
  std::string out = to_string(z.re);
  if (sgn(z.im) < 0) {
    out += "-" + to_string(Rational(-z.im));
  } else {
    out += "+" + to_string(z.im);
  }
  return out + " i";
}

namespace {

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t k = b; k < e; ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits(start, s.size())) return std::nullopt;
  } else {
    if (!digits(start, slash) || !digits(slash + 1, s.size())) return std::nullopt;
  }
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rational r;
  if (r.set_str(body, 10) != 0) return std::nullopt;
  if (sgn(r.get_den()) == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Gauss> parse_gauss(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    auto r = parse_rational(s);
    if (!r) return std::nullopt;
    return Gauss(*r);
  }
  s.pop_back();
  // split at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  auto im = parse_rational(im_part);
  if (!im) return std::nullopt;
  Rational re;
  if (!re_part.empty()) {
    auto r = parse_rational(re_part);
    if (!r) return std::nullopt;
    re = *r;
  }
  return Gauss(re, *im);
}

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Gauss(1);
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(const Gauss& s) {
  for (auto& z : data_)
    if (!z.is_zero()) z *= s;
  return *this;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

QMatrix QMatrix::conj() const {
  QMatrix out = *this;
  for (auto& z : out.data_) z.im = -z.im;
  return out;
}

Gauss QMatrix::trace() const {
  Gauss t;
  for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Gauss& z) { return z.is_zero(); });
}

bool QMatrix::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const Gauss& z) { return z.is_real(); });
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  QMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void QMatrix::set_block(std::size_t r0, std::size_t c0, const QMatrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(QMatrix a) { return a *= Gauss(-1); }
QMatrix operator*(const Gauss& s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("QMatrix product shape mismatch");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Gauss& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        const Gauss& y = b(k, c);
        if (y.is_zero()) continue;
        out(r, c) += x * y;
      }
    }
  }
  return out;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    Gauss p = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Gauss f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
        if (!inv(col, c).is_zero()) inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::size_t rank(const QMatrix& m) {
  QMatrix a = m;
  std::size_t rk = 0;
  for (std::size_t col = 0; col < a.cols() && rk < a.rows(); ++col) {
    std::size_t piv = rk;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(rk, c));
    for (std::size_t r = rk + 1; r < a.rows(); ++r) {
      if (a(r, col).is_zero()) continue;
      Gauss f = a(r, col) / a(rk, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(rk, c);
    }
    ++rk;
  }
  return rk;
}

QMatrix exp_nilpotent(const QMatrix& m) {
  std::size_t n = m.rows();
  QMatrix out = QMatrix::identity(n);
  QMatrix term = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = term * m;
    if (term.is_zero()) return out;
    term *= Gauss(frac(1, static_cast<long>(k)));
    out += term;
  }
  throw std::domain_error("exp_nilpotent: matrix is not nilpotent");
}

// -------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

std::vector<Rational> RatMatrix::row(std::size_t r) const {
  return std::vector<Rational>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

std::vector<Rational> RatMatrix::col(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RatMatrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(r, k)) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (sgn(b(k, c)) != 0) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

std::vector<Rational> operator*(const RatMatrix& a, const std::vector<Rational>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("RatMatrix-vector shape mismatch");
  std::vector<Rational> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (sgn(a(r, c)) != 0 && sgn(v[c]) != 0) out[r] += a(r, c) * v[c];
  return out;
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && sgn(m(piv, col)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Rational p = m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (sgn(m(row, c)) != 0) m(row, c) /= p;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> kernel(RatMatrix m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

Rational determinant(RatMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m(piv, col)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m(r, col)) == 0) continue;
      Rational f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

// --------------------------------------------------------------- sparse

SparseVec to_sparse(const std::vector<Rational>& dense) {
  SparseVec out;
  for (std::size_t k = 0; k < dense.size(); ++k)
    if (sgn(dense[k]) != 0) out.emplace_back(k, dense[k]);
  return out;
}

std::vector<Rational> to_dense(const SparseVec& v, std::size_t dim) {
  std::vector<Rational> out(dim);
  for (const auto& [k, x] : v) out[k] = x;
  return out;
}

SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Rational& s) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second + s * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec scaled(const SparseVec& a, const Rational& s) {
  if (sgn(s) == 0) return {};
  SparseVec out = a;
  for (auto& e : out) e.second *= s;
  return out;
}

bool is_zero(const SparseVec& v) { return v.empty(); }

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  std::map<std::size_t, Rational> acc;
  for (const auto& [c, x] : v)
    for (const auto& [r, y] : columns_[c]) acc[r] += x * y;
  SparseVec out;
  for (auto& [r, x] : acc)
    if (sgn(x) != 0) out.emplace_back(r, x);
  return out;
}

RatMatrix SparseMatrix::to_dense() const {
  RatMatrix out(rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, x] : columns_[c]) out(r, c) = x;
  return out;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) out.column(c) = a.apply(b.column(c));
  return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) out.column(c) = add_scaled(a.column(c), b.column(c), -1);
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (a.column(c) != b.column(c)) return false;
  return true;
}

// ----------------------------------------------------------------- Span

SparseVec Span::reduce(const SparseVec& v) const {
  std::map<std::size_t, Rational> work;
  for (const auto& [k, x] : v) work.emplace(k, x);
  auto it = work.begin();
  while (it != work.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    std::size_t at = it->first;
    Rational f = it->second;
    for (const auto& [k, x] : row->second) {
      Rational& slot = work[k];
      slot -= f * x;
      if (sgn(slot) == 0) work.erase(k);
    }
    it = work.upper_bound(at);
  }
  SparseVec out;
  out.reserve(work.size());
  for (auto& [k, x] : work) out.emplace_back(k, x);
  return out;
}

bool Span::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Rational lead = r.front().second;
  for (auto& e : r) e.second /= lead;
  rows_.emplace(r.front().first, std::move(r));
  return true;
}

bool Span::contains(const SparseVec& v) const { return reduce(v).empty(); }

bool Span::contains(const Span& other) const {
  for (const auto& [p, row] : other.rows_)
    if (!contains(row)) return false;
  return true;
}

std::vector<SparseVec> Span::basis() const {
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

Span span_of(std::size_t ambient, const std::vector<SparseVec>& vectors) {
  Span s(ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

std::vector<SparseVec> intersect(std::size_t ambient, const std::vector<SparseVec>& a,
                                 const std::vector<SparseVec>& b) {
  Span z(2 * ambient);
  for (const auto& v : a) {
    SparseVec doubled = v;
    for (const auto& [k, x] : v) doubled.emplace_back(k + ambient, x);
    z.insert(doubled);
  }
  for (const auto& v : b) z.insert(v);
  std::vector<SparseVec> out;
  for (const auto& row : z.basis()) {
    if (row.front().first < ambient) continue;
    SparseVec shifted;
    for (const auto& [k, x] : row) shifted.emplace_back(k - ambient, x);
    out.push_back(std::move(shifted));
  }
  return out;
}

}  // namespace parabolic
