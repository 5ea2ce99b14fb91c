#pragma once

#include <stdexcept>

namespace stimg {

// Total-degree cap applied by the heavy polynomial operations (products,
// powers, substitution, resultants, map iteration). Sylvester matrices grow
// quadratically in the degree, so oversized inputs are rejected up front.
inline constexpr int kDefaultDegreeCap = 64;

// Candidate budget for rational root enumeration. Beyond it the search
// reports itself as partial instead of running unbounded.
inline constexpr long long kDefaultRootBudget = 1'000'000;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input or misused operation: ring mismatches, arity errors,
// unknown variables, invalid nodes.
struct input_error : error {
  using error::error;
};

// A configured resource cap was exhausted (degree cap, search depth).
struct cap_error : error {
  using error::error;
};

}  // namespace stimg
