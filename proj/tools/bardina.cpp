#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "bardina/parallel.hpp"
#include "bardina/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Damped Navier-Stokes-Bardina solver and verification toolkit"};
  app.set_version_flag("--version", std::string(bardina::kVersion));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  for (const auto& name : bardina::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "Run configuration (INI)")->required();
    sub->add_option("--out", out_dir, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bardina::kExitConfig;
  }

  bardina::apply_thread_env();
  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    return bardina::run_file(subcommand, config, out_dir, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
