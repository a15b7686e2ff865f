#include "fincollab/experiment/runner.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

using namespace fincollab;
using namespace fincollab::experiment;

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int report_run(const RunManifest &manifest, const std::filesystem::path &out) {
  std::size_t ok = 0;
  for (const auto &c : manifest.cells) {
    if (c.status == CellStatus::Terminated) {
      ++ok;
      continue;
    }
    std::cerr << c.ticker << ' ' << orchestrator::to_string(c.structure) << ' ' << to_string(c.task) << ": "
              << to_string(c.status) << (c.error.empty() ? "" : " (" + c.error + ")") << '\n';
  }
  std::cout << ok << "/" << manifest.cells.size() << " cells completed; config " << manifest.config_hash << '\n'
            << "outputs in " << out.string() << '\n';
  return manifest.complete() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multi-agent financial research experiments"};
  app.require_subcommand(0, 1);

  std::string config_path, structures, tickers, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> parallel;
  bool offline = false;
  app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--structures", structures, "Comma-separated structure labels, overriding the config");
  app.add_option("--tickers", tickers, "Comma-separated tickers, overriding the config");
  app.add_flag("--offline", offline, "Use the scripted backend and fixture data");
  app.add_option("--out", out, "Output directory, overriding the config");
  app.add_option("--seed", seed, "Seed, overriding the config");
  app.add_option("--parallel", parallel, "Worker threads (0 = automatic)");

  auto *report = app.add_subcommand("report", "Re-emit summary tables from a finished run");
  std::string report_dir;
  report->add_option("--out", report_dir, "Output directory of the run")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (report->parsed()) {
      const auto manifest = read_manifest(std::filesystem::path(report_dir) / kManifestFile);
      for (const auto &p : emit_report(manifest, report_dir)) std::cout << p.string() << '\n';
      return manifest.complete() ? 0 : 1;
    }
    if (config_path.empty()) {
      std::cerr << "--config is required\n";
      return 2;
    }
    auto config = load_config(config_path);
    if (!tickers.empty()) config.tickers = split_list(tickers);
    if (!structures.empty()) {
      config.structures.clear();
      for (const auto &s : split_list(structures)) config.structures.push_back(orchestrator::parse_structure_kind(s));
    }
    if (!out.empty()) config.output_dir = std::filesystem::absolute(out);
    if (seed) config.seed = *seed;
    if (parallel) config.parallel = *parallel;
    if (offline) force_offline(config);
    validate_config(config);
    const auto manifest = run_experiment(config);
    return report_run(manifest, resolve(config, config.output_dir));
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
