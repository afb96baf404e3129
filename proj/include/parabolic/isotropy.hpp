#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "parabolic/lie_core.hpp"

namespace parabolic {

/// (E, H, F) = (Z, A, X) with [E,F] = H, [H,E] = 2E, [H,F] = -2F.
struct Sl2Triple {
  AlgebraElement e;
  AlgebraElement h;
  AlgebraElement f;
};

bool is_sl2_triple(const Sl2Triple& t);

/// P-orbit tag. grassmannian: "rank1", "rank2" (generally "rank<r>"); quaternionic and sl2:
/// "nonzero"; cr: "contact-annihilating", "transversal-null", "transversal-positive",
/// "transversal-negative".
struct GeometricType {
  std::string tag;

  friend bool operator==(const GeometricType& a, const GeometricType& b) { return a.tag == b.tag; }
  friend bool operator!=(const GeometricType& a, const GeometricType& b) { return a.tag != b.tag; }
};

/// Linearly independent elements spanning a subspace of the algebra.
struct Subspace {
  AlgebraHandle algebra;
  std::vector<AlgebraElement> basis;

  std::size_t dimension() const { return basis.size(); }
  /// Exact span membership.
  bool contains(const AlgebraElement& y) const;
  /// span(other) is contained in span(this).
  bool contains(const Subspace& other) const;
};

Subspace make_subspace(const AlgebraHandle& algebra, const std::vector<AlgebraElement>& spanning);

/// C_{g-}(Z): exact kernel of X -> [Z, X] on g-.
Subspace commutant(const AlgebraElement& z);
/// ad_X^k(Z) stays in p for every k.
bool in_normalizing_set(const AlgebraElement& z, const AlgebraElement& x);
/// (Z, [Z,X], X) is an sl2-triple.
bool in_counterpart_set(const AlgebraElement& z, const AlgebraElement& x);

/// Family closed form for a counterpart in g-, when one is known for Z.
std::optional<AlgebraElement> closed_form_counterpart(const AlgebraElement& z);
/// Two-stage linear solve (H from ad_Z^2, then F from [Z,F] = H, [H,F] = -2F), F projected to g-.
Sl2Triple jacobson_morozov_linear(const AlgebraElement& z);
/// Closed form when available, otherwise the linear solve; always re-verified.
Sl2Triple jacobson_morozov(const AlgebraElement& z);

GeometricType classify(const AlgebraElement& z);

struct CounterpartParams {
  /// Number of samples for parametrized families.
  std::size_t count = 8;
  /// grassmannian of full rank: a complement W as columns (n x m).
  std::optional<QMatrix> complement;
  /// grassmannian rank one: the kernel line V (m x 1) and image line W (n x 1) of X.
  std::optional<QMatrix> kernel_line;
  std::optional<QMatrix> image_line;
};

/// Deterministic sample of T_{g-}(Z); every element passes in_counterpart_set.
std::vector<AlgebraElement> counterpart_sample(const AlgebraElement& z, const CounterpartParams& params = {});

// --------------------------------------------------------------- sampling

/// Small random rational: numerator in [-bound, bound], denominator in {1, 2, 3}.
Rational random_rational(std::mt19937_64& rng, int bound = 3);
/// Random element of g_degree with small rational coordinates.
AlgebraElement random_element(const AlgebraHandle& algebra, int degree, std::mt19937_64& rng, int bound = 3);
AlgebraElement random_element(const AlgebraHandle& algebra, int lo, int hi, std::mt19937_64& rng, int bound = 3);

/// Random element g of the parabolic subgroup P (exact), with its inverse.
struct GroupElement {
  QMatrix g;
  QMatrix inverse;
};
GroupElement random_parabolic(const AlgebraHandle& algebra, std::mt19937_64& rng);
/// Ad(g)Y = g Y g^{-1}.
AlgebraElement conjugate(const GroupElement& g, const AlgebraElement& y);

/// Standard isotropy for each orbit type used by tests and the CLI defaults.
AlgebraElement standard_isotropy(const AlgebraHandle& algebra, const std::string& type_tag);

}  // namespace parabolic
