#include <openssl/evp.h>

#include <cstdio>
#include <set>

#include "parabolic/cli/config.hpp"

namespace parabolic::cli {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

void only_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) fail("unknown key '" + k + "' in " + where);
}

int get_int(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) fail(where + "." + key + " must be an integer");
  return obj[key].get<int>();
}

double get_number(const Json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(std::string(key) + " must be a number");
  return obj[key].get<double>();
}

std::size_t get_count(const Json& obj, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_unsigned()) fail(std::string(key) + " must be a non-negative integer");
  return obj[key].get<std::size_t>();
}

std::vector<double> get_numbers(const Json& obj, const char* key, std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_array()) fail(std::string(key) + " must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) fail(std::string(key) + " must be a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Task parse_task(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail("each task needs a string 'kind'");
  Task t;
  std::string kind = j["kind"];
  if (kind == "audit") {
    only_keys(j, {"kind", "samples"}, "audit task");
    t.kind = TaskKind::audit;
    t.audit.samples = get_count(j, "samples", t.audit.samples);
  } else if (kind == "spectra") {
    only_keys(j, {"kind", "reps"}, "spectra task");
    t.kind = TaskKind::spectra;
    if (j.contains("reps")) {
      if (!j["reps"].is_array()) fail("reps must be a list of names");
      for (const auto& r : j["reps"]) {
        if (!r.is_string()) fail("reps must be a list of names");
        t.spectra.reps.push_back(r.get<std::string>());
      }
    }
  } else if (kind == "flow") {
    only_keys(j, {"kind", "scales", "times", "t_probe", "grid_size", "schedule", "s", "tolerance", "holonomy_tolerance"},
              "flow task");
    t.kind = TaskKind::flow;
    auto& f = t.flow;
    f.scales = get_numbers(j, "scales", f.scales);
    f.times = get_numbers(j, "times", f.times);
    f.t_probe = get_number(j, "t_probe", f.t_probe);
    f.grid_size = get_count(j, "grid_size", f.grid_size);
    f.schedule = get_numbers(j, "schedule", f.schedule);
    f.s = get_number(j, "s", f.s);
    f.tolerance = get_number(j, "tolerance", f.tolerance);
    f.holonomy_tolerance = get_number(j, "holonomy_tolerance", f.holonomy_tolerance);
  } else if (kind == "verify-lemma") {
    only_keys(j, {"kind", "lemma"}, "verify-lemma task");
    t.kind = TaskKind::verify_lemma;
    if (!j.contains("lemma") || !j["lemma"].is_string()) fail("verify-lemma task needs a string 'lemma'");
    t.lemma = j["lemma"];
  } else {
    fail("unknown task kind '" + kind + "'");
  }
  return t;
}

Json task_json(const Task& t) {
  Json j{{"kind", task_kind_name(t.kind)}};
  switch (t.kind) {
    case TaskKind::audit: j["samples"] = t.audit.samples; break;
    case TaskKind::spectra: j["reps"] = t.spectra.reps; break;
    case TaskKind::flow: {
      const auto& f = t.flow;
      j["scales"] = f.scales;
      j["times"] = f.times;
      j["t_probe"] = f.t_probe;
      j["grid_size"] = f.grid_size;
      j["schedule"] = f.schedule;
      j["s"] = f.s;
      j["tolerance"] = f.tolerance;
      j["holonomy_tolerance"] = f.holonomy_tolerance;
      break;
    }
    case TaskKind::verify_lemma: j["lemma"] = t.lemma; break;
  }
  return j;
}

}  // namespace

const char* task_kind_name(TaskKind k) {
  switch (k) {
    case TaskKind::audit: return "audit";
    case TaskKind::spectra: return "spectra";
    case TaskKind::flow: return "flow";
    case TaskKind::verify_lemma: return "verify-lemma";
  }
  return "unknown";
}

ScenarioConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
  only_keys(doc, {"geometry", "isotropy", "tasks"}, "config");
  if (!doc.contains("geometry")) fail("missing geometry");
  ScenarioConfig cfg;
  const Json& geo = doc["geometry"];
  only_keys(geo, {"family", "params", "scalar"}, "geometry");
  if (!geo.contains("family") || !geo["family"].is_string()) fail("geometry.family must be a string");
  auto family = parse_family(geo["family"].get<std::string>());
  if (!family) fail("unknown family '" + geo["family"].get<std::string>() + "'");
  cfg.family = *family;
  Json params = geo.contains("params") ? geo["params"] : Json::object();
  switch (cfg.family) {
    case Family::grassmannian:
      only_keys(params, {"m", "n"}, "params");
      cfg.params.m = get_int(params, "m", "params");
      cfg.params.n = get_int(params, "n", "params");
      break;
    case Family::quaternionic:
      only_keys(params, {"n"}, "params");
      cfg.params.n = get_int(params, "n", "params");
      break;
    case Family::cr:
      only_keys(params, {"p", "q"}, "params");
      cfg.params.p = get_int(params, "p", "params");
      cfg.params.q = get_int(params, "q", "params");
      break;
    case Family::sl2: only_keys(params, {}, "params"); break;
  }
  if (geo.contains("scalar")) {
    if (!geo["scalar"].is_string()) fail("geometry.scalar must be a string");
    auto tag = parse_scalar_tag(geo["scalar"].get<std::string>());
    if (!tag) fail("unknown scalar '" + geo["scalar"].get<std::string>() + "'");
    cfg.scalar = *tag;
  }

  if (doc.contains("isotropy")) {
  const Json& iso = doc["isotropy"];
  only_keys(iso, {"standard", "matrix"}, "isotropy");
  if (iso.contains("standard") == iso.contains("matrix")) fail("isotropy needs exactly one of 'standard' or 'matrix'");
  if (iso.contains("standard")) {
    if (!iso["standard"].is_string()) fail("isotropy.standard must be a string");
    cfg.standard_isotropy = iso["standard"].get<std::string>();
  } else {
    const Json& rows = iso["matrix"];
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) fail("isotropy.matrix must be a list of rows");
    std::size_t n = rows.size(), m = rows[0].size();
    QMatrix mat(n, m);
    for (std::size_t r = 0; r < n; ++r) {
      if (!rows[r].is_array() || rows[r].size() != m) fail("isotropy.matrix rows must have equal length");
      for (std::size_t c = 0; c < m; ++c) {
        if (!rows[r][c].is_string()) fail("matrix entries are exact strings such as \"1/2\" or \"1-2 i\"");
        auto g = parse_gauss(rows[r][c].get<std::string>());
        if (!g) fail("bad matrix entry '" + rows[r][c].get<std::string>() + "'");
        mat(r, c) = *g;
      }
    }
    cfg.isotropy_matrix = mat;
  }
  }

  if (doc.contains("tasks")) {
    if (!doc["tasks"].is_array()) fail("tasks must be a list");
    for (const auto& t : doc["tasks"]) cfg.tasks.push_back(parse_task(t));
  }
  return cfg;
}

std::string serialize_config(const ScenarioConfig& cfg) {
  Json params = Json::object();
  switch (cfg.family) {
    case Family::grassmannian: params = {{"m", cfg.params.m}, {"n", cfg.params.n}}; break;
    case Family::quaternionic: params = {{"n", cfg.params.n}}; break;
    case Family::cr: params = {{"p", cfg.params.p}, {"q", cfg.params.q}}; break;
    case Family::sl2: break;
  }
  Json doc;
  doc["geometry"] = {{"family", family_name(cfg.family)}, {"params", params}, {"scalar", scalar_tag_name(cfg.scalar)}};
  if (cfg.standard_isotropy) {
    doc["isotropy"] = {{"standard", *cfg.standard_isotropy}};
  } else if (cfg.isotropy_matrix) {
    Json rows = Json::array();
    const auto& m = *cfg.isotropy_matrix;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
      rows.push_back(row);
    }
    doc["isotropy"] = {{"matrix", rows}};
  }
  Json tasks = Json::array();
  for (const auto& t : cfg.tasks) tasks.push_back(task_json(t));
  doc["tasks"] = tasks;
  return dump_json(doc);
}

std::string config_digest(const ScenarioConfig& cfg) {
  std::string text = serialize_config(cfg);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

AlgebraHandle scenario_algebra(const ScenarioConfig& cfg) {
  ScalarField field;
  field.tag = cfg.scalar;
  return parabolic::build_algebra(cfg.family, cfg.params, field);
}

AlgebraElement scenario_isotropy(const ScenarioConfig& cfg, const AlgebraHandle& algebra) {
  if (!cfg.standard_isotropy && !cfg.isotropy_matrix) throw Error(ErrorCode::parse_error, "missing isotropy");
  if (cfg.standard_isotropy) {
    try {
      return standard_isotropy(algebra, *cfg.standard_isotropy);
    } catch (const Error& e) {
      throw Error(ErrorCode::validation_error, e.what());
    }
  }
  const QMatrix& m = *cfg.isotropy_matrix;
  if (m.rows() != algebra->ambient_size() || m.cols() != algebra->ambient_size())
    throw Error(ErrorCode::validation_error, "isotropy matrix has the wrong size for " + algebra->label());
  if (m.is_zero()) throw Error(ErrorCode::validation_error, "zero-isotropy");
  if (!algebra->contains(m)) throw Error(ErrorCode::validation_error, "isotropy matrix is not in " + algebra->label());
  auto z = AlgebraElement(algebra, m);
  if (!z.in_p_plus()) throw Error(ErrorCode::validation_error, "isotropy is not in p+");
  return z;
}

}  // namespace parabolic::cli
