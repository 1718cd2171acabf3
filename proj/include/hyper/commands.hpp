#pragma once

#include <iosfwd>
#include <string>

#include "hyper/bundle.hpp"
#include "hyper/config.hpp"

namespace hyper {

inline constexpr const char* kVersion = "1.0.0";

struct CommandOptions {
  std::string config_path;
  std::string out_dir;  // overrides output.dir when non-empty
  int threads = 0;      // overrides solver.threads when positive
};

// Builders behind the subcommands; pure apart from the timestamp in
// metadata.json.
ResultBundle make_run_bundle(const RunConfig& config, unsigned threads);
ResultBundle make_noise_bundle(const RunConfig& config, unsigned threads);
std::string validation_report(const RunConfig& config);

// Subcommands. Return the process exit code: 0 success, 2 invalid
// configuration, 3 solver failure.
int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_noise(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace hyper
