#pragma once

#include <vector>

#include "stimg/polyalg.hpp"
#include "stimg/polymap.hpp"

namespace stimg {

enum class FiberStatus { Empty, Finite, Infinite };

// Outcome of solving f(x,y) = (a,b). The Empty/Finite/Infinite status is an
// exact certificate. The distinct complex-solution count is exact when
// `certified` (two independent shears agreed); otherwise it is a lower bound.
struct FiberResult {
  FiberStatus status = FiberStatus::Empty;
  int distinct_count_over_C = 0;
  bool certified = false;
  std::vector<Point> rational_solutions;  // sorted by height, then lexicographically
  bool enumeration_complete = true;       // false when root enumeration hit its budget
};

struct FiberOptions {
  int degree_cap = kDefaultDegreeCap;
  unsigned long long seed = 0x51ab1eULL;  // shear generator seed
  int shear_tries = 8;
  long long root_budget = kDefaultRootBudget;
};

FiberResult solve_fiber(const PolyMap& f, const Point& target, const FiberOptions& opts = {});

// Exact image membership; never indeterminate.
bool in_image(const PolyMap& f, const Point& target, const FiberOptions& opts = {});

enum class Membership { Yes, No, Indeterminate };

// Pointwise "at most n inverse images" test.
struct AMembership {
  Point point;
  int n = 0;
  Membership member = Membership::Indeterminate;
};

AMembership a_membership(const PolyMap& f, const Point& target, int n,
                         const FiberOptions& opts = {});

}  // namespace stimg
