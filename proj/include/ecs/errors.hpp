#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ecs {

// Bad arguments / configuration (CLI exit code 2).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A perturbation denominator b(mu) vanished at a nonzero root vector
// (CLI exit code 3).  Carries the offending vector.
struct ResonanceError : std::runtime_error {
  std::vector<long> mu;
  explicit ResonanceError(std::vector<long> m)
      : std::runtime_error(describe(m)), mu(std::move(m)) {}

 private:
  static std::string describe(const std::vector<long>& m) {
    std::string s = "resonant denominator at root vector (";
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m[i]);
    }
    s += ")";
    return s;
  }
};

// Two supposedly equivalent computations disagreed (CLI exit code 4).
struct MismatchError : std::runtime_error {
  explicit MismatchError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ecs
