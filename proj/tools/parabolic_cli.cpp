#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "parabolic/cli/commands.hpp"

namespace pc = parabolic::cli;

namespace {

int report_error(const parabolic::Error& e) {
  pc::Json j{{"error", {{"code", parabolic::error_code_name(e.code())}, {"message", e.what()}}}};
  std::cerr << j.dump() << "\n";
  return pc::exit_code_for(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded Lie algebra audits, spectra, flows and lemma checks", pc::kToolName};
  app.set_version_flag("--version", pc::kToolVersion);
  app.require_subcommand(1, 1);

  std::string config_path, out_path, csv_dir;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::optional<std::string> lemma;
  app.add_option("--config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Report path (stdout when absent)");
  app.add_option("--csv-dir", csv_dir, "Directory for CSV trajectory files");
  app.add_option("--tolerance", tolerance, "Flow-law tolerance");
  app.add_option("--seed", seed, "Seed for sampling grids");
  app.fallthrough();

  for (const auto& name : pc::command_names()) {
    auto* sub = app.add_subcommand(name);
    if (name == "verify") sub->add_option("--lemma", lemma, "Lemma id");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ifstream in(config_path);
    std::stringstream text;
    text << in.rdbuf();
    auto config = pc::parse_config(text.str());
    pc::RunOptions options;
    options.tolerance = tolerance;
    options.seed = seed;
    options.lemma = lemma;
    auto outcome = pc::run_command(command, config, options);
    pc::Json report{{"envelope", pc::envelope(config)}, {"body", outcome.body}};
    std::string doc = pc::dump_json(report);
    if (out_path.empty()) {
      std::cout << doc;
    } else {
      std::ofstream(out_path, std::ios::binary) << doc;
    }
    if (!csv_dir.empty()) {
      std::filesystem::create_directories(csv_dir);
      for (const auto& [name, content] : outcome.csv)
        std::ofstream(std::filesystem::path(csv_dir) / name, std::ios::binary) << content;
    }
    return outcome.exit_code;
  } catch (const parabolic::Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << pc::Json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
}
