#pragma once

#include "latinsq/square.hpp"

namespace latinsq::testing {

// Order-6 square with known cycle structure, used across the cycle and
// subsquare tests: tau_{2,3} splits as (2 6)(3 4)(1 5) while tau_{2,4} is a
// single 6-cycle (1-based symbols).
inline LatinSquare order6_sample() {
  return LatinSquare::from_rows({
      {1, 2, 3, 4, 5, 6},
      {2, 3, 6, 5, 4, 1},
      {6, 4, 2, 1, 3, 5},
      {4, 6, 5, 2, 1, 3},
      {5, 1, 4, 3, 6, 2},
      {3, 5, 1, 6, 2, 4},
  });
}

// Group table of the Klein four-group; the order-4 square with the most
// intercalates.
inline LatinSquare klein4() {
  return LatinSquare::from_rows({
      {1, 2, 3, 4},
      {2, 1, 4, 3},
      {3, 4, 1, 2},
      {4, 3, 2, 1},
  });
}

// Two disjoint cyclic order-3 blocks on symbol sets {1,2,3} and {4,5,6}.
inline LatinSquare block_diagonal6() {
  return LatinSquare::from_rows({
      {1, 2, 3, 4, 5, 6},
      {2, 3, 1, 5, 6, 4},
      {3, 1, 2, 6, 4, 5},
      {4, 5, 6, 1, 2, 3},
      {5, 6, 4, 2, 3, 1},
      {6, 4, 5, 3, 1, 2},
  });
}

}  // namespace latinsq::testing
