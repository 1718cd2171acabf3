#include "hyper/bundle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

namespace hyper {

void ResultBundle::add(const std::string& relative_path, std::string contents) {
  files_[relative_path] = std::move(contents);
}

void ResultBundle::write_atomically(const std::filesystem::path& destination) const {
  namespace fs = std::filesystem;
  const fs::path target = fs::absolute(destination);
  const fs::path parent = target.parent_path();
  fs::create_directories(parent);
  const std::string stem = target.filename().string();
  const fs::path staging = parent / ("." + stem + ".tmp-" + std::to_string(::getpid()));
  const fs::path retired = parent / ("." + stem + ".old-" + std::to_string(::getpid()));
  fs::remove_all(staging);
  try {
    for (const auto& [rel, contents] : files_) {
      const fs::path file = staging / rel;
      fs::create_directories(file.parent_path());
      std::ofstream out(file, std::ios::binary);
      out << contents;
      out.close();
      if (!out) throw std::runtime_error("failed writing " + file.string());
    }
    if (fs::exists(target)) fs::rename(target, retired);
    fs::rename(staging, target);
    fs::remove_all(retired);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    if (!fs::exists(target, ec) && fs::exists(retired, ec)) fs::rename(retired, target, ec);
    throw;
  }
}

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string trace_csv(const FieldEnvelope& trace) {
  std::string out = "time,real,imag\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += format_number(trace.time_at(i), 17);
    out += ',';
    out += format_number(trace.samples[i].real(), 17);
    out += ',';
    out += format_number(trace.samples[i].imag(), 17);
    out += '\n';
  }
  return out;
}

}  // namespace hyper
