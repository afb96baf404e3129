#include <random>

#include "doctest.h"
#include "parabolic/exact.hpp"

using namespace parabolic;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound = 3) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, 3);
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = frac(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("frac canonicalizes") {
  CHECK(frac(2, 4) == frac(1, 2));
  CHECK(frac(3, -6).get_den() == 2);
  CHECK(to_string(frac(-6, 4)) == "-3/2");
}

TEST_CASE("gaussian arithmetic") {
  Gauss a(frac(1, 2), 1), b(2, -3);
  CHECK(a * b == Gauss(4, frac(1, 2)));
  CHECK((a / b) * b == a);
  CHECK(gauss_i() * gauss_i() == Gauss(-1));
  CHECK(a.conj().conj() == a);
  CHECK((a * a.conj()).is_real());
  CHECK((a * a.conj()).re == a.norm2());
}

TEST_CASE("gaussian strings round-trip") {
  for (const Gauss& g : {Gauss(0), Gauss(frac(-3, 7)), Gauss(1, 1), Gauss(frac(1, 2), frac(-5, 3)), Gauss(0, -2)}) {
    auto back = parse_gauss(to_string(g));
    REQUIRE(back.has_value());
    CHECK(*back == g);
  }
  CHECK(to_string(Gauss(frac(1, 2), frac(-1, 3))) == "1/2-1/3 i");
  CHECK_FALSE(parse_gauss("1/0").has_value());
  CHECK_FALSE(parse_gauss("abc").has_value());
}

TEST_CASE("rank plus nullity equals column count") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    auto m = random_matrix(rng, r, c, trial % 3 == 0 ? 1 : 3);
    auto ker = kernel(m);
    CHECK(rank(m) + ker.size() == c);
    for (const auto& v : ker) {
      auto image = m * v;
      for (const auto& x : image) CHECK(sgn(x) == 0);
    }
  }
}

TEST_CASE("inverse and determinant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
    auto inv = inverse(a);
    CHECK(inv.has_value() == (sgn(determinant(a)) != 0));
    if (inv) CHECK(a * *inv == RatMatrix::identity(n));
  }
}

TEST_CASE("solve returns a preimage exactly when one exists") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_matrix(rng, 4, 3);
    std::vector<Rational> x{frac(1, 2), -2, 3};
    auto b = m * x;
    auto got = solve(m, b);
    REQUIRE(got.has_value());
    CHECK(m * *got == b);
  }
  RatMatrix m(2, 1);
  m(0, 0) = 1;
  CHECK_FALSE(solve(m, {0, 1}).has_value());
}

TEST_CASE("qmatrix products") {
  QMatrix a(2, 2);
  a(0, 1) = Gauss(0, 1);
  a(1, 0) = Gauss(2);
  CHECK(a.adjoint().adjoint() == a);
  CHECK(commutator(a, a).is_zero());
  CHECK(rank(a) == 2);
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(a * *inv == QMatrix::identity(2));
  QMatrix n(3, 3);
  n(0, 1) = 1;
  n(1, 2) = 1;
  auto e = exp_nilpotent(n);
  CHECK(e(0, 2) == Gauss(frac(1, 2)));
  CHECK(e(0, 0) == Gauss(1));
}

TEST_CASE("sparse vectors and spans") {
  SparseVec a{{0, 1}, {2, 1}}, b{{1, 1}}, c{{0, 1}, {1, 1}, {2, 1}};
  CHECK(add_scaled(a, b, 1) == c);
  CHECK(is_zero(add_scaled(c, c, -1)));
  Span s(3);
  CHECK(s.insert(a));
  CHECK(s.insert(b));
  CHECK_FALSE(s.insert(c));
  CHECK(s.contains(c));
  CHECK(s.rank() == 2);
  CHECK(to_sparse(to_dense(c, 3)) == c);
}

TEST_CASE("zassenhaus intersection matches dimension count") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 5;
    std::vector<SparseVec> a, b;
    auto ma = random_matrix(rng, 3, n), mb = random_matrix(rng, 3, n);
    for (std::size_t i = 0; i < 3; ++i) {
      a.push_back(to_sparse(ma.row(i)));
      b.push_back(to_sparse(mb.row(i)));
    }
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto meet = intersect(n, a, b);
    CHECK(meet.size() + span_of(n, both).rank() == span_of(n, a).rank() + span_of(n, b).rank());
    auto sa = span_of(n, a), sb = span_of(n, b);
    for (const auto& v : meet) {
      CHECK(sa.contains(v));
      CHECK(sb.contains(v));
    }
  }
}

TEST_CASE("sparse matrix application agrees with dense") {
  SparseMatrix m(2, 3);
  m.column(0) = {{0, 1}};
  m.column(2) = {{0, 2}, {1, frac(1, 3)}};
  SparseVec v{{0, 1}, {2, 3}};
  auto dense = m.to_dense();
  CHECK(to_sparse(dense * to_dense(v, 3)) == m.apply(v));
}
