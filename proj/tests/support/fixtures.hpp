#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testsupport {

inline std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

inline std::string fixtures_dir() {
  return env_or("NSURF_FIXTURES", "tests/fixtures");
}

inline std::string cli_path() {
  return env_or("NSURF_CLI", "build/tools/nsurf");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) {
  return read_file(fixtures_dir() + "/" + name);
}

}  // namespace testsupport
