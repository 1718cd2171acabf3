#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hyper/noise.hpp"
#include "hyper/protocol.hpp"

namespace hyper {

struct RunConfig {
  std::string document;  // exact bytes the config was parsed from
  std::uint64_t seed = 0;
  ExperimentPlan plan;
  std::optional<NoiseSettings> noise;
  int threads = 0;  // 0 = environment / hardware default
  std::string output_dir;
};

// Parses a JSON document. Unknown keys, wrong types, missing required keys
// and out-of-range values throw ValidationError naming the key path
// (e.g. "plan.t2"). Plan-level checks (ordering, balance, guard, grid span)
// run as part of parsing.
RunConfig parse_config(const std::string& document);
RunConfig load_config(const std::string& path);

// Lower-case hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

}  // namespace hyper
