#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parabolic {

using Rational = mpq_class;

/// num/den in canonical form (mpq_class(num, den) does not reduce).
Rational frac(long num, long den);

/// Element of Q(i).
struct Gauss {
  Rational re;
  Rational im;

  Gauss() = default;
  Gauss(Rational r) : re(std::move(r)) {}
  Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Gauss(long r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gauss conj() const { return Gauss(re, -im); }
  /// |z|^2
  Rational norm2() const { return re * re + im * im; }

  Gauss& operator+=(const Gauss& o);
  Gauss& operator-=(const Gauss& o);
  Gauss& operator*=(const Gauss& o);
  Gauss& operator/=(const Gauss& o);
};

Gauss operator+(Gauss a, const Gauss& b);
Gauss operator-(Gauss a, const Gauss& b);
Gauss operator-(const Gauss& a);
Gauss operator*(const Gauss& a, const Gauss& b);
Gauss operator/(const Gauss& a, const Gauss& b);
bool operator==(const Gauss& a, const Gauss& b);
inline bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

const Gauss& gauss_i();

/// "p/q" for reals, "a+b i" / "a-b i" otherwise, with "i" for a pure imaginary unit part.
std::string to_string(const Rational& r);
std::string to_string(const Gauss& z);
/// Inverse of to_string; also accepts "i", "-i", "3i", "2/3 i" and plain integers.
std::optional<Gauss> parse_gauss(const std::string& text);

/// Dense matrix over Q(i).
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Gauss& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Gauss& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Gauss& s);

  QMatrix adjoint() const;
  QMatrix transpose() const;
  QMatrix conj() const;
  Gauss trace() const;
  bool is_zero() const;
  bool is_real() const;

  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const QMatrix& b);

  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Gauss> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Gauss& s, QMatrix a);
inline bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

QMatrix commutator(const QMatrix& a, const QMatrix& b);
/// Exact inverse by Gauss-Jordan; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Finite exponential series of a nilpotent matrix; throws when m is not nilpotent.
QMatrix exp_nilpotent(const QMatrix& m);

/// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  std::vector<Rational> col(std::size_t c) const;
  RatMatrix transpose() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
std::vector<Rational> operator*(const RatMatrix& a, const std::vector<Rational>& v);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
std::size_t rank(RatMatrix m);
/// Basis of the null space, one vector per free column.
std::vector<std::vector<Rational>> kernel(RatMatrix m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b);
std::optional<RatMatrix> inverse(const RatMatrix& m);
Rational determinant(RatMatrix m);

/// Sparse rational vector: sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

SparseVec to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseVec& v, std::size_t dim);
SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Rational& s);
SparseVec scaled(const SparseVec& a, const Rational& s);
bool is_zero(const SparseVec& v);

/// Sparse matrix stored by columns.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVec& column(std::size_t c) const { return columns_[c]; }
  SparseVec& column(std::size_t c) { return columns_[c]; }

  SparseVec apply(const SparseVec& v) const;
  RatMatrix to_dense() const;
  std::size_t nonzeros() const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> columns_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
bool operator==(const SparseMatrix& a, const SparseMatrix& b);

/// Incrementally built echelon basis of a subspace of Q^ambient.
class Span {
 public:
  explicit Span(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v; returns true when the rank grew.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  bool contains(const Span& other) const;
  SparseVec reduce(const SparseVec& v) const;
  std::vector<SparseVec> basis() const;

 private:
  std::size_t ambient_;
  std::map<std::size_t, SparseVec> rows_;
};

Span span_of(std::size_t ambient, const std::vector<SparseVec>& vectors);
/// Basis of the intersection of the spans of a and b (Zassenhaus).
std::vector<SparseVec> intersect(std::size_t ambient, const std::vector<SparseVec>& a,
                                 const std::vector<SparseVec>& b);

}  // namespace parabolic
