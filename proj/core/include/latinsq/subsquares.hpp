#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latinsq/square.hpp"

namespace latinsq {

/// Number of order-2 subsquares. Equals the number of 2-cycles over all row
/// pair permutations, and |enumerate_subsquares(square, 2)|.
std::uint64_t count_intercalates(const LatinSquare& square);

/// If the submatrix on the given rows and columns is a Latin square, returns
/// its (sorted, 0-based) symbol set; otherwise nullopt. Requires
/// |rows| == |cols|.
std::optional<std::vector<int>> is_subsquare(const LatinSquare& square,
                                             const std::vector<int>& rows,
                                             const std::vector<int>& cols);

/// All order-m subsquare locations, each reported exactly once, sorted.
/// Proper subsquares only exist for m <= order/2; for order/2 < m < order the
/// result is empty.
std::vector<SubsquareLocation> enumerate_subsquares(const LatinSquare& square, int m);

/// |enumerate_subsquares(square, m)|, with a cheap path for m == 2.
std::uint64_t count_subsquares(const LatinSquare& square, int m);

}  // namespace latinsq
