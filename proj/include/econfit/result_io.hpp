#pragma once

#include <iosfwd>
#include <vector>

#include "econfit/eci.hpp"
#include "econfit/fitness.hpp"
#include "econfit/sps.hpp"
#include "json.hpp"

namespace econfit {

// Ranking tables are `entity,kind,value,rank`, kind being fitness/complexity
// or eci/pci. The JSON sidecar carries the convergence metadata.
void write_ranking_csv(std::ostream& out, const RankingResult& r);
void write_ranking_csv(std::ostream& out, const EciResult& r);
nlohmann::json ranking_metadata(const RankingResult& r);
nlohmann::json ranking_metadata(const EciResult& r);
nlohmann::json to_json(const RankingResult& r);
nlohmann::json to_json(const EciResult& r);

void write_spectroscopy_csv(std::ostream& out, const std::vector<SpectroscopyBar>& bars);

nlohmann::json to_json(const Forecast& f);
nlohmann::json to_json(const EvaluationReport& r);
nlohmann::json to_json(const BacktestResult& r);

/// `country,base_year,method,predicted_growth,analogue_count,dispersion,regime,truncated,trend_fallback`.
void write_forecasts_csv(std::ostream& out, const std::vector<Forecast>& sps, const std::vector<Forecast>& trend);

/// One row per method and regime slice:
/// `method,regime,n,mae,rmse,ci_mae_low,ci_mae_high,ci_rmse_low,ci_rmse_high`.
void write_backtest_csv(std::ostream& out, const BacktestResult& r);

} // namespace econfit
