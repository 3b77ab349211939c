#pragma once

#include <map>

#include "econfit/export_table.hpp"
#include "econfit/fitness.hpp"
#include "econfit/sps.hpp"

namespace econfit {

/// rca -> binarize -> fitness_fixed_point for every year in the table.
std::map<int, RankingResult> rank_all_years(const ExportTable& table, double threshold, const FitnessOptions& opts);

/// Exports + GDP per capita -> (log fitness, log GDPpc) panel.
PanelDataset panel_from_exports(const ExportTable& table, const CountryYearTable& gdppc, double threshold, int horizon,
                                const FitnessOptions& opts = {});

} // namespace econfit
