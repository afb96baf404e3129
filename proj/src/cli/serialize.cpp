#include <cmath>
#include <cstdio>

#include "parabolic/cli/serialize.hpp"

namespace parabolic::cli {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_to(std::string& out, const Json& j, int depth) {
  std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        dump_to(out, v, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_to(out, j[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default: out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_to(out, j, 0);
  return out + "\n";
}

Json to_json(const Rational& r) { return to_string(r); }
Json to_json(const Gauss& z) { return to_string(z); }

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, x] : v) out.push_back(Json::array({i, to_string(x)}));
  return out;
}

Json basis_json(const std::vector<SparseVec>& basis, std::size_t limit) {
  Json out = {{"dimension", basis.size()}};
  if (basis.size() <= limit) {
    Json b = Json::array();
    for (const auto& v : basis) b.push_back(to_json(v));
    out["basis"] = std::move(b);
  }
  return out;
}

Json to_json(const AlgebraElement& y) { return to_json(y.matrix()); }

Json to_json(const Subspace& s) {
  Json b = Json::array();
  for (const auto& y : s.basis) b.push_back(to_json(y));
  return {{"dimension", s.dimension()}, {"basis", std::move(b)}};
}

Json to_json(const Sl2Triple& t) { return {{"Z", to_json(t.e)}, {"H", to_json(t.h)}, {"X", to_json(t.f)}}; }

Json to_json(const EigenDecomposition& d, bool with_bases) {
  Json out = Json::array();
  for (const auto& p : d.pairs) {
    Json e = {{"eigenvalue", to_string(p.eigenvalue)}, {"dimension", p.basis.size()}};
    if (with_bases) e["basis"] = basis_json(p.basis)["basis"];
    out.push_back(std::move(e));
  }
  return out;
}

Json to_json(const FlatnessVerdict& v) {
  Json reps = Json::array();
  for (const auto& r : v.reps) {
    reps.push_back({{"rep", r.rep},
                    {"verdict", verdict_name(r.verdict)},
                    {"level", v.ambient_level ? "ambient-level" : "submodule"},
                    {"eigenvalues", to_json(r.decomposition)},
                    {"stable_dimension", r.stable.stable.dimension()},
                    {"strongly_stable_dimension", r.stable.strongly_stable.dimension()},
                    {"negative_part_condition", r.negative_part_condition},
                    {"fixed_point_constraints", basis_json(r.fixed_point_constraints)}});
  }
  return reps;
}

Json to_json(const GrowthReport& g) {
  Json comps = Json::array();
  for (const auto& c : g.components)
    comps.push_back({{"homogeneity", to_string(c.homogeneity)},
                     {"dimension", c.dimension},
                     {"rate", to_string(c.rate)},
                     {"verdict", c.verdict}});
  return {{"c", to_string(g.c)}, {"compact_orbit_bound", g.compact_orbit_bound}, {"components", comps},
          {"verdict", g.verdict}};
}

Json to_json(const ConvergenceRecord& r) {
  return {{"s", r.s},          {"times", r.times},         {"distances", r.distances},
          {"predicted", r.predicted}, {"tolerance", r.tolerance}, {"verdict", r.verdict}};
}

Json to_json(const PropagationRecord& r) {
  return {{"Y_infinity", to_json(r.y_infinity)},
          {"t_end", r.t_end},
          {"frame_residual", r.frame_residual},
          {"adjoint_residual", r.adjoint_residual},
          {"tolerance", r.tolerance},
          {"converged", r.converged}};
}

Json to_json(const FixedSetScan& s) {
  Json classes = Json::array();
  for (auto c : s.classes) classes.push_back(point_class_name(c));
  return {{"fixed", s.fixed},
          {"strongly_fixed", s.strongly_fixed},
          {"moving", s.moving},
          {"outside_cell", s.outside_cell},
          {"f_members", s.f_members},
          {"f_members_fixed", s.f_members_fixed},
          {"commutant_members", s.commutant_members},
          {"commutant_strongly_fixed", s.commutant_strongly_fixed},
          {"strongly_fixed_outside_commutant", s.strongly_fixed_outside_commutant},
          {"classes", classes}};
}

Json to_json(const ClosedFormProbe& p) {
  Json forms = Json::array();
  forms.push_back({{"form", "1/(2+t*tr(Z xi))"}, {"residual", p.one_over_residual}});
  forms.push_back({{"form", "2/(2+t*tr(Z xi))"}, {"residual", p.two_over_residual}});
  return {{"forms", forms}, {"matching", p.matching}};
}

Json summary_json(const TrajectoryReport& r) {
  return {{"samples", r.samples.size()}, {"max_residual", r.max_residual}, {"outside_cell", r.outside_cell}};
}

}  // namespace parabolic::cli
