#include <random>

#include "doctest.h"
#include "parabolic/isotropy.hpp"

using namespace parabolic;

namespace {

std::vector<AlgebraHandle> structure_suite() {
  std::vector<AlgebraHandle> out;
  for (int n = 2; n <= 5; ++n) out.push_back(build_algebra(Family::grassmannian, {2, n}));
  for (int n = 1; n <= 3; ++n) out.push_back(build_algebra(Family::quaternionic, {0, n}));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}})
    out.push_back(build_algebra(Family::cr, {0, 0, p, q}));
  out.push_back(build_algebra(Family::sl2, {}));
  return out;
}

std::vector<std::pair<int, AlgebraElement>> all_basis(const AlgebraHandle& a) {
  std::vector<std::pair<int, AlgebraElement>> out;
  for (int d = -a->depth(); d <= a->depth(); ++d)
    for (std::size_t i = 0; i < a->dim(d); ++i) out.emplace_back(d, AlgebraElement::basis_element(a, d, i));
  return out;
}

/// tr(ad x ad y) over the real basis, for homogeneous x, y.
Rational killing_by_trace(const AlgebraElement& x, int dx, const AlgebraElement& y, int dy) {
  const auto& a = x.algebra();
  Rational tr = 0;
  for (int d = -a->depth(); d <= a->depth(); ++d) {
    int mid = d + dy, back = mid + dx;
    if (std::abs(mid) > a->depth() || back != d) continue;
    RatMatrix m = ad_matrix(x, mid, d) * ad_matrix(y, d, mid);
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
  }
  return tr;
}

}  // namespace

TEST_CASE("graded dimensions") {
  for (int n = 2; n <= 5; ++n) {
    auto a = build_algebra(Family::grassmannian, {2, n});
    CHECK(a->dim(1) == static_cast<std::size_t>(2 * n));
    CHECK(a->dim(-1) == static_cast<std::size_t>(2 * n));
    CHECK(a->dim(0) == static_cast<std::size_t>(4 + n * n - 1));
    CHECK(a->dim() == static_cast<std::size_t>((n + 2) * (n + 2) - 1));
  }
  for (int n = 1; n <= 3; ++n) {
    auto a = build_algebra(Family::quaternionic, {0, n});
    CHECK(a->dim(1) == static_cast<std::size_t>(4 * n));
    CHECK(a->dim() == static_cast<std::size_t>(4 * (n + 1) * (n + 1) - 1));
  }
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
    auto a = build_algebra(Family::cr, {0, 0, p, q});
    int n = p + q;
    CHECK(a->depth() == 2);
    CHECK(a->dim(-2) == 1);
    CHECK(a->dim(-1) == static_cast<std::size_t>(2 * n));
    CHECK(a->dim(0) == static_cast<std::size_t>(n * n + 1));
    CHECK(a->dim() == static_cast<std::size_t>((n + 2) * (n + 2) - 1));
  }
}

TEST_CASE("jacobi identity and grading compatibility on basis triples") {
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    auto basis = all_basis(a);
    bool jacobi = true, graded = true;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        const auto& [di, x] = basis[i];
        const auto& [dj, y] = basis[j];
        auto xy = bracket(x, y);
        int d = di + dj;
        if (std::abs(d) > a->depth()) {
          graded = graded && xy.is_zero();
        } else {
          graded = graded && xy.in_degree(d);
        }
        if (basis.size() > 40) continue;
        for (std::size_t k = j; k < basis.size(); ++k) {
          const auto& z = basis[k].second;
          auto sum = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
          jacobi = jacobi && sum.is_zero();
        }
      }
    CHECK(graded);
    CHECK(jacobi);
  }
}

TEST_CASE("jacobi identity on random elements of the larger algebras") {
  std::mt19937_64 rng(17);
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    for (int trial = 0; trial < 10; ++trial) {
      auto x = random_element(a, -a->depth(), a->depth(), rng);
      auto y = random_element(a, -a->depth(), a->depth(), rng);
      auto z = random_element(a, -a->depth(), a->depth(), rng);
      auto sum = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
      CHECK(sum.is_zero());
      CHECK(bracket(x, y) == -bracket(y, x));
    }
  }
}

TEST_CASE("grading element acts by the degree") {
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    auto a0 = grading_element(a);
    CHECK(a0.in_degree(0));
    for (const auto& [d, y] : all_basis(a)) CHECK(bracket(a0, y) == Rational(d) * y);
  }
}

TEST_CASE("basis elements satisfy the defining constraints and coordinates round-trip") {
  std::mt19937_64 rng(2);
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    for (const auto& [d, y] : all_basis(a)) CHECK(a->satisfies_constraints(y.matrix()));
    auto y = random_element(a, -a->depth(), a->depth(), rng);
    CHECK(a->from_coordinates(y.coordinates()) == y.matrix());
    auto parts = decompose(y);
    auto sum = AlgebraElement::zero(a);
    for (const auto& [d, c] : parts.components) {
      CHECK(c.in_degree(d));
      sum += c;
    }
    CHECK(sum == y);
  }
}

TEST_CASE("killing form constant matches the adjoint trace") {
  std::mt19937_64 rng(9);
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    for (int d = 0; d <= a->depth(); ++d) {
      auto x = random_element(a, d, rng);
      auto y = random_element(a, -d, rng);
      Rational direct = a->killing_constant() * (x.matrix() * y.matrix()).trace().re;
      CHECK(direct == killing_by_trace(x, d, y, -d));
    }
  }
}

TEST_CASE("membership is validated") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  QMatrix m = QMatrix::identity(5);
  CHECK_THROWS_AS(AlgebraElement(a, m), Error);
  QMatrix c(5, 5);
  c(0, 2) = Gauss(0, 1);
  CHECK_FALSE(a->contains(c));
  CHECK_THROWS_AS(build_algebra(Family::grassmannian, {0, 3}), Error);
  CHECK_THROWS_AS(build_algebra(Family::cr, {0, 0, 1, 2}), Error);
}

TEST_CASE("quaternion units") {
  auto one = quaternion_unit(0), i = quaternion_unit(1), j = quaternion_unit(2), k = quaternion_unit(3);
  auto minus_one = Gauss(-1) * one;
  CHECK(one == QMatrix::identity(2));
  CHECK(i * i == minus_one);
  CHECK(j * j == minus_one);
  CHECK(k * k == minus_one);
  CHECK(i * j * k == minus_one);
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(k * i == j);
}

TEST_CASE("block and slot accessors round-trip") {
  std::mt19937_64 rng(4);
  auto g = build_algebra(Family::grassmannian, {2, 4});
  for (int d : {-1, 1}) {
    auto y = random_element(g, d, rng);
    CHECK(from_offdiagonal_block(g, d, offdiagonal_block(y)) == y);
  }
  auto c = build_algebra(Family::cr, {0, 0, 2, 1});
  for (int d : {-1, 1}) {
    auto y = random_element(c, d, rng);
    CHECK(cr_from_slot(c, d, cr_slot(y)) == y);
    CHECK(complex_structure(complex_structure(y)) == -y);
    CHECK(cr_slot(complex_structure(y)) == gauss_i() * cr_slot(y));
  }
}

TEST_CASE("levi form is nondegenerate on cr g_{-1}") {
  auto c = build_algebra(Family::cr, {0, 0, 2, 1});
  std::size_t n = c->dim(-1);
  RatMatrix form(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      form(i, j) = levi_form(AlgebraElement::basis_element(c, -1, i), AlgebraElement::basis_element(c, -1, j));
  CHECK(rank(form) == n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(form(i, j) == -form(j, i));
}

TEST_CASE("pairing is nondegenerate between g_1 and g_{-1}") {
  for (const auto& a : structure_suite()) {
    CAPTURE(a->label());
    std::size_t n = a->dim(1);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = pairing(AlgebraElement::basis_element(a, 1, i), AlgebraElement::basis_element(a, -1, j));
    CHECK(rank(m) == n);
  }
}
