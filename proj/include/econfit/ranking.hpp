#pragma once

#include <span>
#include <string>
#include <vector>

namespace econfit {

/// 1-based ranks, highest value first. Exact ties go to the lexicographically
/// smaller identifier.
std::vector<int> rank_descending(std::span<const double> values, std::span<const std::string> ids);

/// Indices ordered as `rank_descending` ranks them.
std::vector<std::size_t> order_descending(std::span<const double> values, std::span<const std::string> ids);

} // namespace econfit
