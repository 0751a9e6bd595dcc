// dirac1d <mode> --config path [--output dir] [--threads n]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dirac1d/experiment.hpp"
#include "dirac1d/parallel.hpp"

namespace {

std::optional<unsigned> threads_from_env() {
  const char* s = std::getenv("DIRAC1D_THREADS");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "warning: ignoring invalid DIRAC1D_THREADS='" << s << "'\n";
    return std::nullopt;
  }
  return static_cast<unsigned>(n);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dirac1d;

  CLI::App app{"Nonlinear Dirac equations in one dimension: simulation, decay, bounds and scattering."};
  app.set_version_flag("--version", version_string());
  std::string mode_name, config_path, output;
  unsigned threads = 0;
  app.add_option("mode", mode_name, "simulate | decay | scatter | check-bounds | scalar-evolve")
      ->required()
      ->check(CLI::IsMember({"simulate", "decay", "scatter", "check-bounds", "scalar-evolve"}));
  app.add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
  app.add_option("--output", output, "output directory (overrides the config)");
  app.add_option("--threads", threads, "worker threads (default: DIRAC1D_THREADS or 1)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (threads > 0)
    set_thread_count(threads);
  else if (auto env = threads_from_env())
    set_thread_count(*env);

  ExperimentConfig config;
  try {
    std::ifstream in(config_path);
    std::stringstream text;
    text << in.rdbuf();
    config = parse_config(text.str(), parse_mode(mode_name));
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  if (!output.empty()) config.output = output;

  try {
    const ExperimentOutcome outcome = run_experiment(config);
    for (const auto& err : outcome.errors) std::cerr << "error: " << err << '\n';
    return outcome.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
