#include "econfit/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "econfit/error.hpp"

namespace econfit {

std::vector<std::size_t> order_descending(std::span<const double> values, std::span<const std::string> ids) {
    if (values.size() != ids.size()) throw Error("ranking values and identifiers differ in length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return ids[a] < ids[b];
    });
    return order;
}

std::vector<int> rank_descending(std::span<const double> values, std::span<const std::string> ids) {
    const auto order = order_descending(values, ids);
    std::vector<int> ranks(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r + 1);
    return ranks;
}

} // namespace econfit
