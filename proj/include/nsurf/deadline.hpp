#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "nsurf/errors.hpp"

namespace nsurf {

// Cooperative deadline checked between algorithm stages; a default-constructed
// Deadline never expires.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline never() { return {}; }

  static Deadline in_ms(std::int64_t ms) {
    Deadline d;
    d.at = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return d;
  }

  bool expired() const {
    return at && std::chrono::steady_clock::now() >= *at;
  }

  void check() const {
    if (expired()) throw TimeoutError();
  }
};

}  // namespace nsurf
