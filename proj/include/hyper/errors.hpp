#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hyper {

// A configuration, plan or sequence failed validation. `key` names the
// offending setting (may be empty when no single key is at fault).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Numerical failure inside the Maxwell-Bloch integration (non-finite values,
// violated step constraints).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyper
