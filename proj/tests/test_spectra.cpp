#include <algorithm>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "parabolic/spectra.hpp"

using namespace parabolic;

namespace {

using Multiset = std::map<Rational, std::size_t>;

Multiset exact_multiset(const EigenDecomposition& d) {
  Multiset out;
  for (const auto& p : d.pairs) out[p.eigenvalue] += p.basis.size();
  return out;
}

/// Float eigenvalues of the dense action, rounded to the nearest multiple of 1/den.
Multiset float_multiset(const TensorRep& rep, const AlgebraElement& a, int den) {
  RatMatrix m = rep.action(a).to_dense();
  Eigen::MatrixXd f(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) f(r, c) = m(r, c).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(f, false);
  Multiset out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    auto v = solver.eigenvalues()[i];
    REQUIRE(std::abs(v.imag()) < 1e-6);
    long k = std::lround(v.real() * den);
    REQUIRE(std::abs(v.real() * den - static_cast<double>(k)) < 1e-6);
    out[frac(k, den)] += 1;
  }
  return out;
}

/// ad(h) eigenvalues on a single degree, read off the exact action.
std::vector<Rational> degree_eigenvalues(const AlgebraElement& h, int degree) {
  auto rep = TensorRep::adjoint(h.algebra(), degree, degree);
  std::vector<Rational> out;
  for (const auto& p : eigendecompose(h, rep).pairs)
    for (std::size_t i = 0; i < p.basis.size(); ++i) out.push_back(p.eigenvalue);
  return out;
}

Multiset pair_sum_multiset(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Multiset out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = i + 1; k < a.size(); ++k)
      for (const auto& x : b) out[a[i] + a[k] + x] += 1;
  return out;
}

struct Scenario {
  AlgebraHandle algebra;
  std::string tag;
};

std::vector<Scenario> scenarios() {
  return {{build_algebra(Family::grassmannian, {2, 3}), "rank2"},
          {build_algebra(Family::grassmannian, {2, 3}), "rank1"},
          {build_algebra(Family::grassmannian, {2, 4}), "rank1"},
          {build_algebra(Family::quaternionic, {0, 1}), "nonzero"},
          {build_algebra(Family::cr, {0, 0, 1, 1}), "transversal-null"},
          {build_algebra(Family::cr, {0, 0, 2, 1}), "contact-annihilating"},
          {build_algebra(Family::cr, {0, 0, 2, 1}), "transversal-positive"}};
}

}  // namespace

TEST_CASE("named rep dimensions") {
  for (int n : {3, 4}) {
    auto a = build_algebra(Family::grassmannian, {2, n});
    std::size_t d1 = a->dim(1), d0 = a->dim(0);
    CHECK(build_rep(a, "adjoint-negative").dimension() == a->dim(-1));
    CHECK(build_rep(a, "p-plus").dimension() == d1);
    CHECK(build_rep(a, "torsion-ambient").dimension() == d1 * (d1 - 1) / 2 * d1);
    CHECK(build_rep(a, "curvature-ambient").dimension() == d1 * (d1 - 1) / 2 * d0);
    std::size_t un = static_cast<std::size_t>(n);
    CHECK(build_rep(a, "grass-v1").dimension() == 3 * 2);
    CHECK(build_rep(a, "grass-v2").dimension() == un * (un - 1) / 2 * un);
    CHECK(build_rep(a, "grass-v").dimension() == 6 * un * (un - 1) / 2 * un);
    CHECK(build_rep(a, "grass-u").dimension() == un * (un + 1) / 2 * (un * un - 1));
  }
  auto g = build_algebra(Family::grassmannian, {2, 3});
  CHECK(build_rep(g, "curvature-ambient").dimension() == 180);
  CHECK_THROWS_AS(build_rep(g, "cr-torsion-ambient"), Error);
  CHECK_THROWS_AS(build_rep(g, "no-such-rep"), Error);
}

TEST_CASE("grassmannian rank-2 torsion ambient eigen table") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  auto t = jacobson_morozov(standard_isotropy(a, "rank2"));
  auto d = eigendecompose(t.h, build_rep(a, "torsion-ambient"));
  Multiset expected{{Rational(3), 12}, {Rational(2), 40}, {Rational(1), 34}, {Rational(0), 4}};
  CHECK(exact_multiset(d) == expected);
  auto st = stable_subspaces(d);
  CHECK(st.stable.dimension() == 4);
  CHECK(st.strongly_stable.dimension() == 0);
}

TEST_CASE("exact eigenvalues agree with a floating point solver") {
  for (const auto& sc : scenarios()) {
    auto t = jacobson_morozov(standard_isotropy(sc.algebra, sc.tag));
    CAPTURE(sc.algebra->label());
    CAPTURE(sc.tag);
    for (const auto& name : rep_names(sc.algebra)) {
      auto rep = build_rep(sc.algebra, name);
      if (rep.dimension() > 200) continue;
      CAPTURE(name);
      CHECK(exact_multiset(eigendecompose(t.h, rep)) == float_multiset(rep, t.h, 2));
    }
  }
}

TEST_CASE("torsion ambient eigenvalues are pair sums") {
  for (const auto& sc : scenarios()) {
    auto t = jacobson_morozov(standard_isotropy(sc.algebra, sc.tag));
    CAPTURE(sc.tag);
    auto up = degree_eigenvalues(t.h, 1), down = degree_eigenvalues(t.h, -1), mid = degree_eigenvalues(t.h, 0);
    CHECK(exact_multiset(eigendecompose(t.h, build_rep(sc.algebra, "torsion-ambient"))) ==
          pair_sum_multiset(up, down));
    CHECK(exact_multiset(eigendecompose(t.h, build_rep(sc.algebra, "curvature-ambient"))) ==
          pair_sum_multiset(up, mid));
  }
}

TEST_CASE("eigenvectors satisfy the eigen equation and span the rep") {
  for (const auto& sc : scenarios()) {
    auto t = jacobson_morozov(standard_isotropy(sc.algebra, sc.tag));
    for (const char* name : {"adjoint-negative", "p-plus", "torsion-ambient"}) {
      auto rep = build_rep(sc.algebra, name);
      auto action = rep.action(t.h);
      auto d = eigendecompose(t.h, rep);
      std::vector<SparseVec> all;
      for (const auto& p : d.pairs)
        for (const auto& v : p.basis) {
          CHECK(action.apply(v) == scaled(v, p.eigenvalue));
          all.push_back(v);
        }
      CHECK(rep_span(rep.dimension(), all).dimension() == rep.dimension());
      for (std::size_t i = 1; i < d.pairs.size(); ++i) CHECK(d.pairs[i - 1].eigenvalue > d.pairs[i].eigenvalue);
    }
  }
}

TEST_CASE("dual, tensor and square reps follow the eigenvalue rules") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  auto h = jacobson_morozov(standard_isotropy(a, "rank1")).h;
  auto v = TensorRep::adjoint(a, -1, -1);
  auto ev = degree_eigenvalues(h, -1);
  Multiset dual, tensor, wedge, sym;
  for (const auto& x : ev) dual[-x] += 1;
  for (const auto& x : ev)
    for (const auto& y : ev) tensor[x + y] += 1;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i; j < ev.size(); ++j) {
      sym[ev[i] + ev[j]] += 1;
      if (j > i) wedge[ev[i] + ev[j]] += 1;
    }
  CHECK(exact_multiset(eigendecompose(h, TensorRep::dual(v))) == dual);
  CHECK(exact_multiset(eigendecompose(h, TensorRep::tensor(v, v))) == tensor);
  CHECK(exact_multiset(eigendecompose(h, TensorRep::exterior_square(v))) == wedge);
  CHECK(exact_multiset(eigendecompose(h, TensorRep::symmetric_square(v))) == sym);
}

TEST_CASE("reps are representations") {
  std::mt19937_64 rng(6);
  for (const auto& sc : scenarios()) {
    for (const char* name : {"adjoint-negative", "torsion-ambient"}) {
      auto rep = build_rep(sc.algebra, name);
      for (int trial = 0; trial < 3; ++trial) {
        auto x = random_element(sc.algebra, 0, rng, 2), y = random_element(sc.algebra, 0, rng, 2);
        RatMatrix rx = rep.action(x).to_dense(), ry = rep.action(y).to_dense();
        RatMatrix lhs = rep.action(bracket(x, y)).to_dense(), yx = ry * rx;
        for (std::size_t r = 0; r < lhs.rows(); ++r)
          for (std::size_t c = 0; c < lhs.cols(); ++c) lhs(r, c) += yx(r, c);
        CHECK(lhs == rx * ry);
      }
    }
  }
}

TEST_CASE("sub reps and factor embedding") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  auto h = jacobson_morozov(standard_isotropy(a, "rank2")).h;
  auto v = TensorRep::adjoint(a, -1, -1);
  auto d = eigendecompose(h, v);
  REQUIRE(!d.pairs.empty());
  auto sub = TensorRep::sub(v, d.pairs.front().basis);
  CHECK(sub.dimension() == d.pairs.front().basis.size());
  for (std::size_t i = 0; i < sub.dimension(); ++i) {
    SparseVec e{{i, 1}};
    auto back = sub.restrict(sub.embed(e));
    REQUIRE(back.has_value());
    CHECK(*back == e);
  }
  auto w = TensorRep::adjoint(a, 1, 1);
  for (std::size_t which : {0u, 1u}) {
    auto t = which == 0 ? TensorRep::tensor(sub, w) : TensorRep::tensor(w, sub);
    SparseVec e{{0, 1}};
    auto full = embed_factor(t, e, which);
    SparseVec expected = which == 0 ? kron(sub.embed({{0, 1}}), {{0, 1}}, w.dimension())
                                    : kron({{0, 1}}, sub.embed({{0, 1}}), v.dimension());
    CHECK(full == expected);
  }
  CHECK(TensorRep::sub(v, {}).dimension() == 0);
}

TEST_CASE("subspace operations") {
  std::size_t n = 5;
  auto a = rep_span(n, {{{0, 1}}, {{1, 1}}, {{2, 1}, {3, 1}}});
  auto b = rep_span(n, {{{1, 1}}, {{3, 1}}, {{4, 1}}});
  auto sum = rep_sum(a, b), meet = rep_intersection(a, b);
  CHECK(a.dimension() == 3);
  CHECK(sum.dimension() + meet.dimension() == a.dimension() + b.dimension());
  CHECK(sum.contains(a));
  CHECK(a.contains(meet));
  CHECK(b.contains(meet));
  CHECK(rep_span(n, {{{0, 2}}, {{1, 1}, {0, 1}}, {{2, 1}, {3, 1}}}) == a);
}

TEST_CASE("tensor helpers") {
  CHECK(kron({{1, 2}}, {{0, 3}}, 4) == SparseVec{{4, 6}});
  SparseVec e0{{0, 1}}, e2{{2, 1}};
  CHECK(wedge(e0, e2, 3) == SparseVec{{1, 1}});
  CHECK(wedge(e2, e0, 3) == SparseVec{{1, -1}});
  CHECK(is_zero(wedge(e0, e0, 3)));
  CHECK(symmetric_product(e0, e2, 3) == symmetric_product(e2, e0, 3));
}

TEST_CASE("adjoint coordinates round-trip") {
  std::mt19937_64 rng(3);
  for (const auto& sc : scenarios()) {
    auto rep = build_rep(sc.algebra, "adjoint-negative");
    auto y = random_element(sc.algebra, -sc.algebra->depth(), -1, rng);
    CHECK(adjoint_element(rep, adjoint_vector(rep, y)) == y);
  }
}

TEST_CASE("flatness verdicts follow the stable subspace rule") {
  for (const auto& sc : scenarios()) {
    auto z = standard_isotropy(sc.algebra, sc.tag);
    auto t = jacobson_morozov(z);
    auto fv = flatness_verdict(z, t);
    CAPTURE(sc.tag);
    bool isolated = commutant(z).dimension() == 0;
    for (const auto& r : fv.reps) {
      CAPTURE(r.rep);
      Verdict expected = Verdict::no_conclusion;
      bool has_zero = r.decomposition.find(Rational(0)) != nullptr;
      bool has_negative = !r.decomposition.pairs.empty() && sgn(r.decomposition.pairs.back().eigenvalue) < 0;
      if (!has_zero && !has_negative) expected = Verdict::vanishes_on_curve;
      else if (!has_negative)
        expected = r.negative_part_condition && !isolated ? Verdict::vanishes_on_open_neighborhood
                                                          : Verdict::vanishes_if_zero_at_fixed_point;
      CHECK(r.verdict == expected);
      CHECK(r.negative_part_condition == negative_part_condition(z, t));
    }
  }
  auto a = build_algebra(Family::grassmannian, {2, 3});
  auto z = standard_isotropy(a, "rank2");
  auto wrong = jacobson_morozov(standard_isotropy(a, "rank1"));
  CHECK_THROWS_AS(flatness_verdict(z, wrong), Error);
}

TEST_CASE("negative part condition") {
  auto g = build_algebra(Family::grassmannian, {2, 4});
  for (const char* tag : {"rank2", "rank1"}) {
    auto z = standard_isotropy(g, tag);
    CHECK(negative_part_condition(z, jacobson_morozov(z)));
  }
  auto c = build_algebra(Family::cr, {0, 0, 2, 1});
  auto z = standard_isotropy(c, "transversal-null");
  auto t = jacobson_morozov(z);
  CHECK_FALSE(negative_part_condition(z, t));
  auto zero = eigendecompose(t.h, build_rep(c, "adjoint-negative")).find(Rational(0));
  REQUIRE(zero != nullptr);
  CHECK(zero->basis.size() == 2);
}

TEST_CASE("eigendecompose rejects non-semisimple elements") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  QMatrix m(5, 5);
  m(0, 1) = 1;
  AlgebraElement n(a, m);
  REQUIRE(n.in_degree(0));
  CHECK_THROWS_AS(eigendecompose(n, build_rep(a, "adjoint-negative")), Error);
  CHECK_THROWS_AS(eigendecompose(standard_isotropy(a, "rank2"), build_rep(a, "adjoint-negative")), Error);
}

TEST_CASE("semisimple growth") {
  auto a = build_algebra(Family::grassmannian, {2, 3});
  auto a0 = grading_element(a);
  auto rep = build_rep(a, "adjoint-negative");
  auto g = semisimple_growth(Rational(2) * a0, rep);
  CHECK(g.c == 2);
  CHECK(g.verdict == "contracting");
  REQUIRE(g.components.size() == 1);
  CHECK(g.components[0].rate == -2);
  CHECK(g.compact_orbit_bound == doctest::Approx(1.0));
  auto mixed = semisimple_growth(a0, build_rep(a, "torsion-ambient"));
  CHECK(mixed.verdict == "expanding");

  QMatrix hyperbolic(5, 5);
  hyperbolic(0, 0) = 1;
  hyperbolic(1, 1) = -1;
  CHECK_THROWS_AS(semisimple_growth(a0 + AlgebraElement(a, hyperbolic), rep), Error);

  QMatrix rotation(5, 5);
  rotation(0, 1) = 1;
  rotation(1, 0) = -1;
  auto k = semisimple_growth(a0 + AlgebraElement(a, rotation), rep);
  CHECK(k.c == 1);
  CHECK(k.compact_orbit_bound <= 10.0);
  CHECK_THROWS_AS(semisimple_growth(standard_isotropy(a, "rank2"), rep), Error);
}
