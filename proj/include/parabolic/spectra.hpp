#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/isotropy.hpp"

namespace parabolic {

enum class RepKind { adjoint, standard, dual, tensor, exterior_square, symmetric_square, sub };

/// Finite-dimensional real representation of g_0 with an explicit basis.
///
/// Index conventions: tensor(a, b) puts e_i (x) f_j at i * dim(b) + j; exterior and
/// symmetric squares enumerate pairs i < j (resp. i <= j) lexicographically; adjoint
/// reps use the algebra's real coordinates over the degree range.
class TensorRep {
 public:
  /// g_lo + ... + g_hi under ad.
  static TensorRep adjoint(const AlgebraHandle& algebra, int lo, int hi);
  /// R^a (block 0) or R^b (block 1) of a grassmannian or sl2 algebra; A acts by its diagonal block.
  static TensorRep standard(const AlgebraHandle& algebra, std::size_t block);
  static TensorRep dual(const TensorRep& v);
  static TensorRep tensor(const TensorRep& a, const TensorRep& b);
  static TensorRep exterior_square(const TensorRep& v);
  static TensorRep symmetric_square(const TensorRep& v);
  /// Invariant subspace spanned by `basis` (vectors of `parent`).
  static TensorRep sub(const TensorRep& parent, const std::vector<SparseVec>& basis);

  const std::string& name() const;
  TensorRep named(std::string name) const;
  const AlgebraHandle& algebra() const;
  std::size_t dimension() const;
  RepKind kind() const;
  const std::vector<TensorRep>& factors() const;
  /// Basis of a sub rep in parent coordinates.
  const std::vector<SparseVec>& sub_basis() const;
  int lo_degree() const;
  int hi_degree() const;
  std::size_t block() const;

  /// rho(a) for a in g_0, as an exact sparse matrix.
  SparseMatrix action(const AlgebraElement& a) const;
  /// Parent coordinates of a sub-rep vector.
  SparseVec embed(const SparseVec& v) const;
  /// Sub-rep coordinates of a parent vector lying in the sub rep.
  std::optional<SparseVec> restrict(const SparseVec& parent_vector) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

/// Named reps: adjoint-negative, p-plus, torsion-ambient, curvature-ambient,
/// cr-torsion-ambient, cr-curvature-ambient (cr only), and for grassmannian(2,n):
/// grass-v1 = S^2 R^2 (x) R^2*, grass-v2 = L^2 R^n* (x) R^n, grass-v = grass-v1 (x) grass-v2,
/// grass-u = (L^2 R^2 (x) S^2 R^n*) (x) sl(n).
TensorRep build_rep(const AlgebraHandle& algebra, const std::string& name);
std::vector<std::string> rep_names(const AlgebraHandle& algebra);

/// Tensor helpers matching the index conventions above.
SparseVec kron(const SparseVec& a, const SparseVec& b, std::size_t dim_b);
SparseVec wedge(const SparseVec& a, const SparseVec& b, std::size_t dim);
SparseVec symmetric_product(const SparseVec& a, const SparseVec& b, std::size_t dim);
/// Replaces factor `which` (a sub rep) of a tensor rep by its parent in the coordinates of v.
SparseVec embed_factor(const TensorRep& tensor, const SparseVec& v, std::size_t which);

/// Coordinates of a g_{-1} element X (n x m block) of a grassmannian algebra in R^m* (x) R^n:
/// X = sum X_ba f_a (x) e_b.
SparseVec block_tensor(const AlgebraElement& x);
/// Coordinates of y in an adjoint rep (concatenated degree coordinates) and back.
SparseVec adjoint_vector(const TensorRep& rep, const AlgebraElement& y);
AlgebraElement adjoint_element(const TensorRep& rep, const SparseVec& v);

struct Eigenspace {
  Rational eigenvalue;
  std::vector<SparseVec> basis;
};

struct EigenDecomposition {
  std::size_t dimension = 0;
  /// Sorted by eigenvalue, descending.
  std::vector<Eigenspace> pairs;

  std::vector<Rational> eigenvalues() const;
  const Eigenspace* find(const Rational& mu) const;
};

/// Exact eigendecomposition of rho(a); throws not-diagonalizable when the candidate scan
/// does not exhaust the dimension.
EigenDecomposition eigendecompose(const AlgebraElement& a, const TensorRep& rep);

/// Linear subspace of a rep, by an independent basis.
struct RepSubspace {
  std::size_t ambient = 0;
  std::vector<SparseVec> basis;

  std::size_t dimension() const { return basis.size(); }
  bool contains(const SparseVec& v) const;
  bool contains(const RepSubspace& other) const;
  bool operator==(const RepSubspace& other) const;
};

RepSubspace rep_span(std::size_t ambient, const std::vector<SparseVec>& vectors);
RepSubspace rep_sum(const RepSubspace& a, const RepSubspace& b);
RepSubspace rep_intersection(const RepSubspace& a, const RepSubspace& b);

struct StableSubspaces {
  RepSubspace stable;
  RepSubspace strongly_stable;
};

StableSubspaces stable_subspaces(const EigenDecomposition& decomp);
/// Eigenspace for mu as a subspace (empty when mu is not an eigenvalue).
RepSubspace eigenspace(const EigenDecomposition& decomp, const Rational& mu);

enum class Verdict { vanishes_on_curve, vanishes_if_zero_at_fixed_point, vanishes_on_open_neighborhood, no_conclusion };
const char* verdict_name(Verdict v);

struct RepVerdict {
  std::string rep;
  Verdict verdict = Verdict::no_conclusion;
  EigenDecomposition decomposition;
  StableSubspaces stable;
  /// All ad(A) eigenvalues on g- are nonpositive and the 0-eigenspace is the commutant.
  bool negative_part_condition = false;
  /// Constraint basis for the value at the fixed point (the stable subspace).
  std::vector<SparseVec> fixed_point_constraints;
};

struct FlatnessVerdict {
  std::vector<RepVerdict> reps;
  bool ambient_level = true;
};

/// Eigenvalue condition on g- used by the open-neighborhood criterion.
bool negative_part_condition(const AlgebraElement& z, const Sl2Triple& triple);
FlatnessVerdict flatness_verdict(const AlgebraElement& z, const Sl2Triple& triple);

struct GrowthComponent {
  Rational homogeneity;
  std::size_t dimension = 0;
  /// Exponent rate c * h of |e^{c h t}|.
  Rational rate;
  std::string verdict;
};

struct GrowthReport {
  Rational c;
  std::vector<GrowthComponent> components;
  std::string verdict;
  /// max over basis vectors and sampled t of ||e^{t rho(K)} b|| / ||b||.
  double compact_orbit_bound = 0;
};

/// Splits z0 = c A_0 + K with c from the trace form and checks K generates a bounded group on rep.
GrowthReport semisimple_growth(const AlgebraElement& z0, const TensorRep& rep);

}  // namespace parabolic
