#include "econfit/pipeline.hpp"

namespace econfit {

std::map<int, RankingResult> rank_all_years(const ExportTable& table, double threshold, const FitnessOptions& opts) {
    std::map<int, RankingResult> out;
    for (const auto& entry : table.years()) {
        const int year = entry.first;
        out.emplace(year, fitness_fixed_point(binarize(rca(table, year), threshold), opts));
    }
    return out;
}

PanelDataset panel_from_exports(const ExportTable& table, const CountryYearTable& gdppc, double threshold, int horizon,
                                const FitnessOptions& opts) {
    return build_panel(rank_all_years(table, threshold, opts), gdppc, horizon);
}

} // namespace econfit
