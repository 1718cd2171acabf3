#include <iostream>

#include <CLI11.hpp>

#include "hyper/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HYPER photon-echo memory simulator"};
  app.set_version_flag("--version", hyper::kVersion);
  app.require_subcommand(1);

  hyper::CommandOptions options;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", options.config_path, "JSON configuration file")->required();
    sub->add_option("--out", options.out_dir, "bundle directory (overrides output.dir)");
    sub->add_option("--threads", options.threads, "worker threads (overrides HYPER_THREADS)");
  };
  auto* run = app.add_subcommand("run", "run the configured plan and write a result bundle");
  auto* validate = app.add_subcommand("validate", "check a configuration without solving");
  auto* noise = app.add_subcommand("noise", "run the heterodyne noise experiment");
  add_common(run);
  add_common(validate);
  add_common(noise);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (run->parsed()) return hyper::cmd_run(options, std::cout, std::cerr);
  if (validate->parsed()) return hyper::cmd_validate(options, std::cout, std::cerr);
  return hyper::cmd_noise(options, std::cout, std::cerr);
}
