#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "parabolic/cli/commands.hpp"
#include "parabolic/cli/lemmas.hpp"

using namespace parabolic;
using namespace parabolic::cli;

namespace {

std::filesystem::path configs_dir() { return std::filesystem::path(PARABOLIC_SOURCE_DIR) / "tests" / "configs"; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ScenarioConfig load(const std::string& name) { return parse_config(read_file(configs_dir() / name)); }

int error_exit(const std::string& text) {
  try {
    auto cfg = parse_config(text);
    scenario_isotropy(cfg, scenario_algebra(cfg));
  } catch (const Error& e) {
    return exit_code_for(e.code());
  }
  return 0;
}

const char* kMinimal = R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
                           "isotropy": {"standard": "rank2"}, "tasks": []})";

}  // namespace

TEST_CASE("shipped configs round-trip byte for byte") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(configs_dir())) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    CAPTURE(entry.path().filename().string());
    std::string text = read_file(entry.path());
    auto cfg = parse_config(text);
    CHECK(serialize_config(cfg) == text);
    CHECK(config_digest(parse_config(serialize_config(cfg))) == config_digest(cfg));
  }
  CHECK(seen >= 7);
}

TEST_CASE("defaults fill in and serialize canonically") {
  auto cfg = parse_config(kMinimal);
  CHECK(cfg.family == Family::grassmannian);
  CHECK(cfg.standard_isotropy == std::optional<std::string>("rank2"));
  CHECK(cfg.tasks.empty());
  auto again = parse_config(serialize_config(cfg));
  CHECK(serialize_config(again) == serialize_config(cfg));
  CHECK(config_digest(cfg).size() == 64);
  auto other = cfg;
  other.standard_isotropy = "rank1";
  CHECK(config_digest(other) != config_digest(cfg));
}

TEST_CASE("malformed configs are parse errors") {
  for (const char* text :
       {"{", "[]", R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}}, "extra": 1})",
        R"({"geometry": {"family": "hyperbolic", "params": {}}, "isotropy": {"standard": "rank2"}})",
        R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
            "isotropy": {"standard": "rank2", "matrix": [["0"]]}})",
        R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
            "isotropy": {"standard": "rank2"}, "tasks": [{"kind": "dance"}]})",
        R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
            "isotropy": {"standard": "rank2"}, "tasks": [{"kind": "flow", "speed": 3}]})"}) {
    CAPTURE(text);
    CHECK(error_exit(text) == 2);
  }
}

TEST_CASE("invalid isotropies are validation errors") {
  CHECK(error_exit(read_file(configs_dir() / "zero_isotropy.json")) == 3);
  CHECK(error_exit(R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
                       "isotropy": {"standard": "contact-annihilating"}})") == 3);
  CHECK(error_exit(R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}},
                       "isotropy": {"matrix": [["1","0"],["0","-1"]]}})") == 3);
  CHECK(error_exit(R"({"geometry": {"family": "grassmannian", "params": {"m": 0, "n": 3}},
                       "isotropy": {"standard": "rank2"}})") == 3);
  CHECK(error_exit(R"({"geometry": {"family": "grassmannian", "params": {"m": 2, "n": 3}, "scalar": "float64"},
                       "isotropy": {"standard": "rank2"}})") == 0);
}

TEST_CASE("a matrix isotropy matches the standard one") {
  auto cfg = load("grass23_rank2.json");
  auto a = scenario_algebra(cfg);
  auto z = scenario_isotropy(cfg, a);
  ScenarioConfig m = cfg;
  m.standard_isotropy.reset();
  m.isotropy_matrix = z.matrix();
  auto back = parse_config(serialize_config(m));
  CHECK(scenario_isotropy(back, a) == z);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ErrorCode::parse_error) == 2);
  CHECK(exit_code_for(ErrorCode::validation_error) == 3);
  CHECK(exit_code_for(ErrorCode::unknown_lemma) == 3);
  CHECK(exit_code_for(ErrorCode::schedule_too_short) == 5);
  CHECK(exit_code_for(ErrorCode::outside_cell) == 5);
}

TEST_CASE("command outcomes") {
  RunOptions opts;
  auto algebra = run_command("algebra", load("grass23_rank2.json"), opts);
  CHECK(algebra.exit_code == 0);
  CHECK(algebra.body["algebra"]["dimension"] == 24);

  auto verify = run_command("verify", load("grass24_rank1.json"), opts);
  CHECK(verify.exit_code == 0);
  bool found = false;
  for (const auto& t : verify.body["tasks"])
    if (t["lemma"] == "grass-one") {
      found = true;
      CHECK(t["pass"] == true);
    }
  CHECK(found);

  CHECK(run_command("verify", load("cr21_null.json"), opts).exit_code == 4);
  CHECK(run_command("flow", load("short_schedule.json"), opts).exit_code == 5);

  RunOptions unknown;
  unknown.lemma = "no-such-lemma";
  auto bad = run_command("verify", load("grass23_rank2.json"), unknown);
  CHECK(bad.exit_code == 3);
  CHECK_THROWS_AS(run_command("dance", load("grass23_rank2.json"), opts), Error);
}

TEST_CASE("flow command writes a csv per flow task") {
  auto cfg = load("cr21_contact.json");
  auto out = run_command("flow", cfg, RunOptions{});
  CHECK(out.exit_code == 0);
  REQUIRE(out.csv.count("flow-0.csv") == 1);
  CHECK(out.csv["flow-0.csv"].rfind("s,t,coord-index,predicted,simulated,residual\n", 0) == 0);
  const auto& task = out.body["tasks"][0];
  CHECK(task["ray_flow"]["within_tolerance"] == true);
  CHECK(task["sl2_identity"]["exact_zero"] == true);
}

TEST_CASE("report bodies are deterministic") {
  for (const char* name : {"grass23_rank2.json", "cr21_null.json"}) {
    auto cfg = load(name);
    RunOptions opts;
    opts.seed = 5;
    CHECK(dump_json(run_command("verify", cfg, opts).body) == dump_json(run_command("verify", cfg, opts).body));
  }
}

TEST_CASE("lemma registry") {
  auto g = build_algebra(Family::grassmannian, {2, 3});
  auto c = build_algebra(Family::cr, {0, 0, 2, 1});
  CHECK(lemma_ids().size() == 6);
  CHECK(lemma_applies("grass-two", g));
  CHECK_FALSE(lemma_applies("contact", g));
  CHECK(lemma_applies("cr-null", c));
  CHECK_FALSE(lemma_applies("cr-null", build_algebra(Family::cr, {0, 0, 1, 0})));
  CHECK_THROWS_AS(verify_lemma("quat", g), Error);
  CHECK_THROWS_AS(verify_lemma("nonsense", g), Error);
  auto report = verify_lemma("grass-two", g);
  CHECK(report.pass());
  CHECK(report.to_json()["claims"].size() == report.claims.size());
}

TEST_CASE("json dumping") {
  Json j{{"a", 0.1}, {"b", {1, 2}}, {"c", std::numeric_limits<double>::infinity()}, {"d", "x"}};
  std::string text = dump_json(j);
  CHECK(text.back() == '\n');
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"c\": null") != std::string::npos);
  CHECK(text.find("\n  \"b\": [\n    1,\n    2\n  ]") != std::string::npos);
  CHECK(format_double(1.0) == "1");
}
