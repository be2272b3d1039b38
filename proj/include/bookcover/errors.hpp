#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bookcover {

// Resource limits for group enumeration and minor expansion. Defaults give
// a desk-scale guarantee; every cap is overridable from the CLI.
struct Caps {
  std::uint64_t max_group_order = 1'000'000;
  std::uint32_t max_degree = 4096;
  std::uint32_t max_minors_dim = 8;
};

// Input is too large for the configured caps.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid input (bad JSON, unknown generator, non-homomorphism).
struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A condition that is impossible for correct inputs; always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace bookcover
