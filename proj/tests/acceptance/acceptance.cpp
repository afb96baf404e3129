// One PASS/FAIL line per acceptance criterion; details follow on indented lines.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "parabolic/cli/commands.hpp"
#include "parabolic/cli/lemmas.hpp"

using namespace parabolic;
using namespace parabolic::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Scenario {
  AlgebraHandle algebra;
  std::string tag;
  std::string name() const { return algebra->label() + " " + tag; }
};

AlgebraHandle grass(int n) { return build_algebra(Family::grassmannian, {2, n}); }
AlgebraHandle quat(int n) { return build_algebra(Family::quaternionic, {0, n}); }
AlgebraHandle cr(int p, int q) { return build_algebra(Family::cr, {0, 0, p, q}); }

std::vector<Scenario> family_scenarios() {
  return {{grass(3), "rank2"},
          {grass(3), "rank1"},
          {quat(1), "nonzero"},
          {quat(2), "nonzero"},
          {cr(2, 1), "contact-annihilating"},
          {cr(2, 1), "transversal-positive"},
          {cr(2, 1), "transversal-null"},
          {build_algebra(Family::sl2, {}), "nonzero"}};
}

/// Runs a lemma and checks the named claims (all claims when `ids` is empty).
void check_claims(Outcome& out, const std::string& lemma, const AlgebraHandle& a, const std::set<std::string>& ids) {
  auto report = verify_lemma(lemma, a);
  for (const auto& c : report.claims) {
    if (!ids.empty() && !ids.count(c.id)) continue;
    out.require(c.pass, lemma + " on " + a->label() + ": " + c.id + " (" + c.statement + ")");
  }
}

Outcome structure_suite() {
  Outcome out;
  std::vector<AlgebraHandle> algebras;
  for (int n = 2; n <= 5; ++n) algebras.push_back(grass(n));
  for (int n = 1; n <= 3; ++n) algebras.push_back(quat(n));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) algebras.push_back(cr(p, q));
  for (const auto& a : algebras) {
    std::vector<int> degree;
    std::vector<AlgebraElement> basis;
    for (int d = -a->depth(); d <= a->depth(); ++d)
      for (std::size_t i = 0; i < a->dim(d); ++i) {
        degree.push_back(d);
        basis.push_back(AlgebraElement::basis_element(a, d, i));
      }
    std::size_t n = basis.size();
    std::vector<std::size_t> offset{0};
    for (int d = -a->depth(); d <= a->depth(); ++d) offset.push_back(offset.back() + a->dim(d));

    // Structure constants [e_i, e_j] = sum_k c[i][j][k] e_k, stored sparsely.
    std::vector<std::vector<SparseVec>> c(n, std::vector<SparseVec>(n));
    bool graded = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto b = bracket(basis[i], basis[j]);
        int d = degree[i] + degree[j];
        if (std::abs(d) > a->depth()) {
          graded = graded && b.is_zero();
          continue;
        }
        graded = graded && b.in_degree(d);
        c[i][j] = to_sparse(b.coordinates());
      }
    auto bracket_sv = [&](std::size_t i, const SparseVec& v) {
      SparseVec out;
      for (const auto& [l, x] : v) out = add_scaled(out, c[i][l], x);
      return out;
    };
    bool jacobi = true;
    for (std::size_t i = 0; i < n && jacobi; ++i)
      for (std::size_t j = i; j < n && jacobi; ++j)
        for (std::size_t k = j; k < n; ++k) {
          SparseVec s = bracket_sv(i, c[j][k]);
          s = add_scaled(s, bracket_sv(j, c[k][i]), 1);
          s = add_scaled(s, bracket_sv(k, c[i][j]), 1);
          if (!is_zero(s)) {
            jacobi = false;
            break;
          }
        }
    auto a0 = grading_element(a);
    bool eigen = a0.in_degree(0);
    for (std::size_t i = 0; i < n; ++i) eigen = eigen && bracket(a0, basis[i]) == Rational(degree[i]) * basis[i];
    out.require(jacobi, a->label() + ": Jacobi identity on all basis triples (structure constants)");
    out.require(graded, a->label() + ": [g_i, g_j] in g_{i+j}");
    out.require(eigen, a->label() + ": ad(grading element) = degree");
  }
  return out;
}

Outcome grass_two() {
  Outcome out;
  for (int n : {3, 4, 5})
    check_claims(out, "grass-two", grass(n),
                 {"commutant", "counterpart-set", "g-1-negative", "v2-table", "curvature-ambient-st",
                  "torsion-ambient-ss"});
  return out;
}

Outcome grass_one() {
  Outcome out;
  for (int n : {3, 4})
    check_claims(out, "grass-one", grass(n), {"a", "b", "c", "d", "e", "f", "g", "h", "zero-eigenspace"});
  return out;
}

Outcome quat_lemma() {
  Outcome out;
  for (int n : {1, 2}) check_claims(out, "quat", quat(n), {"counterpart-set", "g-1-negative", "u-st", "v-ss"});
  return out;
}

Outcome cr_lemmas() {
  Outcome out;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    auto a = cr(p, q);
    check_claims(out, "contact", a, {"grading-element"});
    check_claims(out, "cr-nonnull", a, {"twice-grading", "counterpart-set"});
    check_claims(out, "cr-null", a, {"p-plus-table", "commutant"});
    auto comm = commutant(standard_isotropy(a, "transversal-null"));
    out.note(a->label() + " null commutant real dimension " + std::to_string(comm.dimension()));
  }
  return out;
}

const std::vector<Rational>& grid5() {
  static const std::vector<Rational> v{frac(1, 4), frac(1, 2), 1, 2, 4};
  return v;
}

Outcome sl2_identity() {
  Outcome out;
  auto sl2 = jacobson_morozov(standard_isotropy(build_algebra(Family::sl2, {}), "nonzero"));
  bool exact = true;
  std::size_t pairs = 0;
  for (const auto& s : grid5())
    for (const auto& t : grid5()) {
      auto r = verify_sl2_identity(sl2, s, t);
      exact = exact && r.exact && sgn(r.exact_residual) == 0;
      ++pairs;
    }
  out.require(exact && pairs == 25, "sl(2): exact residual 0 over " + std::to_string(pairs) + " rational pairs");
  for (const auto& sc : family_scenarios()) {
    auto triple = jacobson_morozov(standard_isotropy(sc.algebra, sc.tag));
    double worst = 0;
    for (const auto& s : grid5())
      for (const auto& t : grid5()) worst = std::max(worst, verify_sl2_identity(triple, s, t).residual);
    out.require(worst <= 1e-10, sc.name() + ": float residual " + fmt(worst));
  }
  return out;
}

Outcome flow_law() {
  Outcome out;
  std::vector<double> scales{0.25, 0.5, 1, 2, 4}, times{0.125, 0.5, 1, 2, 8};
  for (const auto& sc : family_scenarios()) {
    auto z = standard_isotropy(sc.algebra, sc.tag);
    auto x = jacobson_morozov(z).f;
    auto ray = ray_flow(z, x, scales, times);
    out.require(ray.outside_cell == 0 && ray.max_residual <= 1e-8,
                sc.name() + ": ray flow max residual " + fmt(ray.max_residual));
    std::vector<CMatrix> points;
    for (double s : scales) points.push_back(s * to_complex(x));
    std::vector<std::pair<double, double>> pairs;
    for (double t : times)
      for (double u : times) pairs.emplace_back(t, u);
    double semi = semigroup_residual(z, points, pairs);
    out.require(semi <= 2e-8, sc.name() + ": semigroup residual " + fmt(semi));
  }
  return out;
}

Outcome holonomy() {
  Outcome out;
  std::vector<Scenario> triples{{grass(3), "rank2"}, {quat(1), "nonzero"}, {cr(2, 1), "contact-annihilating"},
                                {cr(2, 1), "transversal-positive"}};
  std::vector<double> schedule{1, 10, 100, 1000};
  for (const auto& sc : triples) {
    auto z = standard_isotropy(sc.algebra, sc.tag);
    auto t = jacobson_morozov(z);
    auto rec = holonomy_convergence(t, 1, schedule);
    bool monotone = true;
    for (std::size_t i = schedule.size() / 2; i + 1 < schedule.size(); ++i)
      monotone = monotone && rec.distances[i + 1] <= rec.distances[i];
    out.require(monotone, sc.name() + ": d(t) nonincreasing over the last half of the schedule");
    out.require(rec.distances.back() <= 1e-6, sc.name() + ": d(1000) = " + fmt(rec.distances.back()) +
                                                  " (closed form s/(1+st)|X| = " + fmt(rec.predicted.back()) + ")");
    AlgebraElement y = frac(1, 4) * t.f;
    for (const auto& c : commutant(z).basis) y += frac(1, 4) * c;
    auto p = propagate_holonomy(t, 1, y, schedule.back());
    out.require(p.frame_residual <= 1e-6 && p.adjoint_residual <= 1e-6,
                sc.name() + ": propagation residuals frame " + fmt(p.frame_residual) + ", adjoint " +
                    fmt(p.adjoint_residual));
  }
  return out;
}

Outcome fixed_sets() {
  Outcome out;
  std::vector<Scenario> cases{{grass(3), "rank2"},          {grass(4), "rank1"},
                              {quat(2), "nonzero"},          {cr(2, 1), "contact-annihilating"},
                              {cr(2, 1), "transversal-positive"}, {cr(2, 1), "transversal-null"}};
  std::set<std::string> isolated{"rank2", "contact-annihilating", "transversal-positive"};
  for (const auto& sc : cases) {
    auto z = standard_isotropy(sc.algebra, sc.tag);
    auto grid = scan_grid(z, 1000, 1);
    auto s = fixed_set_scan(z, grid, 0.5);
    std::string counts = " (" + std::to_string(s.f_members_fixed) + "/" + std::to_string(s.f_members) + " F, " +
                         std::to_string(s.commutant_strongly_fixed) + "/" + std::to_string(s.commutant_members) +
                         " C, " + std::to_string(s.strongly_fixed_outside_commutant) + " strongly fixed outside C)";
    bool ok = grid.size() == 1000 && s.f_members_fixed == s.f_members &&
              s.commutant_strongly_fixed == s.commutant_members;
    if (isolated.count(sc.tag)) ok = ok && s.strongly_fixed_outside_commutant == 0;
    out.require(ok, sc.name() + counts);
  }
  return out;
}

Outcome orbit_invariance() {
  Outcome out;
  std::vector<Scenario> cases{{grass(3), "rank2"},
                              {grass(3), "rank1"},
                              {quat(2), "nonzero"},
                              {cr(2, 1), "contact-annihilating"},
                              {cr(2, 1), "transversal-positive"},
                              {cr(2, 1), "transversal-negative"},
                              {cr(2, 1), "transversal-null"}};
  std::mt19937_64 rng(2024);
  for (const auto& sc : cases) {
    auto z = standard_isotropy(sc.algebra, sc.tag);
    auto type = classify(z);
    std::size_t agree = 0;
    for (int i = 0; i < 100; ++i) {
      auto g = random_parabolic(sc.algebra, rng);
      if (classify(conjugate(g, z)) == type) ++agree;
    }
    out.require(agree == 100, sc.name() + ": " + std::to_string(agree) + "/100 conjugates keep the type (exact)");
  }
  return out;
}

Outcome determinism(std::chrono::steady_clock::time_point start) {
  Outcome out;
  std::vector<ScenarioConfig> configs;
  configs.push_back(parse_config(R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 4}},
                                     "isotropy": {"standard": "rank1"}})"));
  configs.push_back(parse_config(R"({"geometry": {"family": "quaternionic", "params": {"n": 2}},
                                     "isotropy": {"standard": "nonzero"}})"));
  configs.push_back(parse_config(R"({"geometry": {"family": "cr", "params": {"p": 2, "q": 1}},
                                     "isotropy": {"standard": "transversal-null"}})"));
  for (const auto& cfg : configs) {
    RunOptions opts;
    auto first = dump_json(run_command("verify", cfg, opts).body);
    auto second = dump_json(run_command("verify", cfg, opts).body);
    out.require(first == second, scenario_algebra(cfg)->label() + ": verify bodies byte-identical (" +
                                     std::to_string(first.size()) + " bytes)");
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(elapsed <= 300, "acceptance wall time so far " + fmt(elapsed) + " s");
  return out;
}

Outcome closed_form_probe() {
  Outcome out;
  std::vector<double> scales{0.25, 0.5, 1, 2, 4}, times{0.125, 0.5, 1, 2, 8};
  for (int n : {3, 4, 5}) {
    auto z = standard_isotropy(grass(n), "rank2");
    auto p = rank2_closed_form_probe(z, jacobson_morozov(z).f, scales, times);
    out.require(p.matching != "neither", grass(n)->label() + ": matching form " + p.matching + " (residuals " +
                                             fmt(p.two_over_residual) + " for 2/(2+t*tr), " +
                                             fmt(p.one_over_residual) + " for 1/(2+t*tr))");
  }
  return out;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"structure suite", structure_suite},
      {"grassmannian rank-2 lemma", grass_two},
      {"grassmannian rank-1 lemma", grass_one},
      {"quaternionic lemma", quat_lemma},
      {"cr contact, nonnull and null lemmas", cr_lemmas},
      {"sl(2) identity", sl2_identity},
      {"flow law and semigroup", flow_law},
      {"holonomy convergence", holonomy},
      {"fixed-set consistency", fixed_sets},
      {"orbit invariance", orbit_invariance},
      {"determinism and wall time", [start] { return determinism(start); }},
      {"rank-2 closed form probe", closed_form_probe}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("threw: ") + e.what());
    }
    std::printf("%s %zu %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
