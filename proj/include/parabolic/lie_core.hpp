#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/error.hpp"
#include "parabolic/exact.hpp"

namespace parabolic {

enum class ScalarTag { rational, gaussian_rational, float64, complex128 };

struct ScalarField {
  ScalarTag tag = ScalarTag::gaussian_rational;
  /// Comparison tolerance, meaningful for the float tags.
  double tolerance = 1e-10;

  bool exact() const { return tag == ScalarTag::rational || tag == ScalarTag::gaussian_rational; }
  bool complex() const { return tag == ScalarTag::gaussian_rational || tag == ScalarTag::complex128; }
};

const char* scalar_tag_name(ScalarTag tag);
std::optional<ScalarTag> parse_scalar_tag(const std::string& name);

enum class Family { grassmannian, quaternionic, cr, sl2 };

const char* family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

/// grassmannian uses (m, n), quaternionic uses n, cr uses (p, q); sl2 takes none.
struct FamilyParams {
  int m = 0;
  int n = 0;
  int p = 0;
  int q = 0;
};

/// 2x2 complex image of the quaternion unit 1, i, j, k (u = 0..3).
QMatrix quaternion_unit(int u);

class GradedAlgebra;
using AlgebraHandle = std::shared_ptr<const GradedAlgebra>;

/// Matrix realization of a graded real Lie algebra g_{-k} + ... + g_k.
///
/// Every family is realized inside complex square matrices. Elements are
/// described by real coordinates over a fixed real basis, ordered by degree
/// (from -k to k) and, inside a degree, row-major over the block entries with
/// the real part before the imaginary part.
class GradedAlgebra {
 public:
  Family family() const { return family_; }
  const FamilyParams& params() const { return params_; }
  const ScalarField& scalar() const { return scalar_; }
  std::size_t ambient_size() const { return ambient_; }
  int depth() const { return depth_; }
  /// Block sizes in the complex defining representation.
  const std::vector<std::size_t>& block_partition() const { return blocks_; }
  /// Human-readable label such as "grassmannian(2,3)".
  std::string label() const;

  /// Degree of the matrix entry (r, c).
  int entry_degree(std::size_t r, std::size_t c) const;

  const std::vector<QMatrix>& basis(int degree) const;
  std::size_t dim(int degree) const;
  std::size_t dim() const;
  /// Offset of degree `degree` inside the full coordinate vector.
  std::size_t offset(int degree) const;

  /// Signature form diag(1_p, -1_q) for cr, absent otherwise.
  const std::optional<QMatrix>& hermitian_form() const { return signature_; }
  /// The form H with M* H + H M = 0 defining su(p+1, q+1); cr only.
  const std::optional<QMatrix>& ambient_form() const { return ambient_form_; }

  /// Real coordinates of m over the degree-d basis; nullopt when m is not in span(g_d).
  std::optional<std::vector<Rational>> coordinates(const QMatrix& m, int degree) const;
  /// Coordinates over the whole basis; nullopt when m is not in the algebra.
  std::optional<std::vector<Rational>> coordinates(const QMatrix& m) const;
  QMatrix from_coordinates(int degree, const std::vector<Rational>& coords) const;
  QMatrix from_coordinates(const std::vector<Rational>& coords) const;
  bool contains(const QMatrix& m) const { return coordinates(m).has_value(); }

  /// Checks the family's defining linear constraints directly (trace, form, quaternionic structure).
  bool satisfies_constraints(const QMatrix& m) const;

  /// Killing form B(X,Y) = killing_constant() * Re tr(XY) for this realization.
  Rational killing_constant() const;

  friend AlgebraHandle build_algebra(Family family, const FamilyParams& params, ScalarField scalar);

 private:
  struct DegreeData {
    std::vector<QMatrix> basis;
    std::vector<std::size_t> positions;  // flattened real positions used for coordinates
    RatMatrix solve;                    // inverse of the basis restricted to positions
  };

  GradedAlgebra() = default;
  void finalize();
  const DegreeData& data(int degree) const;

  Family family_ = Family::sl2;
  FamilyParams params_;
  ScalarField scalar_;
  std::size_t ambient_ = 0;
  int depth_ = 1;
  std::vector<std::size_t> blocks_;
  std::vector<int> block_of_;
  std::map<int, DegreeData> degrees_;
  std::optional<QMatrix> signature_;
  std::optional<QMatrix> ambient_form_;
};

AlgebraHandle build_algebra(Family family, const FamilyParams& params, ScalarField scalar = {});

/// A matrix known to lie in a given algebra.
class AlgebraElement {
 public:
  /// Validates membership exactly; throws validation-error otherwise.
  AlgebraElement(AlgebraHandle algebra, QMatrix matrix);

  static AlgebraElement zero(const AlgebraHandle& algebra);
  static AlgebraElement from_coordinates(const AlgebraHandle& algebra, int degree,
                                         const std::vector<Rational>& coords);
  static AlgebraElement basis_element(const AlgebraHandle& algebra, int degree, std::size_t index);
  /// Skips validation; for results that are in the algebra by construction.
  static AlgebraElement trusted(AlgebraHandle algebra, QMatrix matrix);

  const QMatrix& matrix() const { return matrix_; }
  const AlgebraHandle& algebra() const { return algebra_; }

  bool is_zero() const { return matrix_.is_zero(); }
  /// Real coordinates over the full basis.
  std::vector<Rational> coordinates() const;
  std::vector<Rational> coordinates(int degree) const;

  /// True when all nonzero entries have degree in [lo, hi].
  bool in_degrees(int lo, int hi) const;
  bool in_p_plus() const { return in_degrees(1, algebra_->depth()); }
  bool in_g_minus() const { return in_degrees(-algebra_->depth(), -1); }
  bool in_degree(int d) const { return in_degrees(d, d); }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Rational& s);

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.matrix_ == b.matrix_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

 private:
  AlgebraElement() = default;
  AlgebraHandle algebra_;
  QMatrix matrix_;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a);
AlgebraElement operator*(const Rational& s, AlgebraElement a);

struct GradingDecomposition {
  std::map<int, AlgebraElement> components;
};

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement grading_component(const AlgebraElement& y, int degree);
GradingDecomposition decompose(const AlgebraElement& y);
AlgebraElement grading_element(const AlgebraHandle& algebra);

/// tr(ZX) in the defining representation, for Z in p+ and X in g-.
Rational pairing(const AlgebraElement& z, const AlgebraElement& x);
/// Coefficient of [X,Y] against the g_{-2} basis vector; depth-2 algebras only.
Rational levi_form(const AlgebraElement& x, const AlgebraElement& y);
/// Complex structure J on g_{-1} and g_1 of the cr family (multiplication by i on the X and Z slots).
AlgebraElement complex_structure(const AlgebraElement& y);

/// Real matrix of ad(x) restricted to g_from, written in g_to coordinates.
RatMatrix ad_matrix(const AlgebraElement& x, int from, int to);

/// For cr: the column X in C^n of a g_{-1} element and the row Z of a g_1 element.
QMatrix cr_slot(const AlgebraElement& y);
/// Inverse of cr_slot: the g_{-1} element with X-slot `column`, or the g_1 element with Z-slot `row`.
AlgebraElement cr_from_slot(const AlgebraHandle& algebra, int degree, const QMatrix& slot);
/// |1|-graded families: the off-diagonal block of a g_1 or g_{-1} element
/// (complex 2x2n / 2nx2 for quaternionic).
QMatrix offdiagonal_block(const AlgebraElement& y);
AlgebraElement from_offdiagonal_block(const AlgebraHandle& algebra, int degree, const QMatrix& block);

}  // namespace parabolic
