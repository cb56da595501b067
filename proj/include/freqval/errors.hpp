#pragma once

#include <stdexcept>
#include <string>

namespace freqval {

// Thrown when a brute-force computation would exceed a configured cap.
// The message names the cap so callers can raise it deliberately.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a value computation produced a non-finite intermediate.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freqval
