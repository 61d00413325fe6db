#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace conley {

using VertexId = std::uint32_t;
using SimplexId = std::uint32_t;
using VectorId = std::uint32_t;
using PosetId = std::uint32_t;

// Sentinel for "no index" (empty column low, unassigned pivot owner, ...).
inline constexpr std::uint32_t kNoIndex = std::numeric_limits<std::uint32_t>::max();

// Input or structural precondition violated (bad partition, non-convex
// vector, inadmissible order, infeasible generator parameters, ...).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// File-level failure: unreadable path, malformed JSON/CSV.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A reduction exceeded its deadline.
class TimeoutError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace conley
