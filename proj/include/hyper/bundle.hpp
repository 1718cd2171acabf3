#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "hyper/field.hpp"

namespace hyper {

// In-memory set of result files, written to disk in one atomic step.
class ResultBundle {
 public:
  void add(const std::string& relative_path, std::string contents);
  const std::map<std::string, std::string>& files() const { return files_; }
  const std::string& at(const std::string& relative_path) const { return files_.at(relative_path); }

  // Writes every file under a sibling temporary directory, then renames it to
  // `destination`, replacing any previous bundle there. On failure the
  // temporary directory is removed and `destination` is left untouched.
  void write_atomically(const std::filesystem::path& destination) const;

 private:
  std::map<std::string, std::string> files_;
};

// printf-style %.<digits>g; "nan"/"inf" spelled out.
std::string format_number(double value, int digits);

// CSV with header "time,real,imag", 17 significant digits.
std::string trace_csv(const FieldEnvelope& trace);

}  // namespace hyper
