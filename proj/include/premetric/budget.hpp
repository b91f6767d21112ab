#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "premetric/error.hpp"

namespace premetric {

/// Wall-clock budget. A default-constructed deadline never expires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : end_(std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget)) {}

  bool expired() const { return end_ && std::chrono::steady_clock::now() > *end_; }
  void check(const std::string& what) const {
    if (expired()) throw Error(ErrorCode::Timeout, what + " exceeded its time budget");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

}  // namespace premetric
