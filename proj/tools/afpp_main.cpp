#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "afpp/gallery.hpp"
#include "afpp/runner.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir,
                const afpp::RunOptions& opts) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read " << config_path << "\n";
    return afpp::kExitConfig;
  }
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return afpp::kExitConfig;
  }

  afpp::RunOutcome outcome = afpp::run_config(config, opts);
  if (!outcome.error.empty()) {
    std::cerr << "error: " << outcome.error << "\n";
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << "\n";
    return afpp::kExitConfig;
  }
  for (const auto& file : outcome.files) {
    const auto path = std::filesystem::path(out_dir) / file.name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << path.string() << "\n";
      return afpp::kExitConfig;
    }
    out << file.content;
  }
  if (!outcome.summary.empty()) {
    std::cout << outcome.summary << "\n";
  }
  return outcome.exit_code;
}

int gallery_list() {
  for (const auto& name : afpp::gallery_names()) {
    const auto instance = afpp::gallery_instance(name);
    std::cout << instance.name << ": " << instance.claim << "\n";
  }
  return afpp::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate fixed points on convex sequence bodies"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  afpp::RunOptions opts;
  std::optional<std::uint64_t> seed;
  std::optional<long long> budget;

  auto* run = app.add_subcommand("run", "execute a JSON config");
  run->add_option("config", config_path, "path to the config file")
      ->required();
  run->add_option("--out", out_dir, "directory for report artifacts");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--budget", budget,
                  "cap solver work and cell budgets");
  run->add_option("--format", opts.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* gallery = app.add_subcommand("gallery", "built-in instances");
  bool list = false;
  gallery->add_subcommand("list", "print instance names and claims")
      ->callback([&] { list = true; });

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    opts.seed_override = seed;
    opts.budget_override = budget;
    return run_command(config_path, out_dir, opts);
  }
  if (gallery->parsed() && list) {
    return gallery_list();
  }
  std::cerr << "error: nothing to do\n";
  return afpp::kExitConfig;
}
