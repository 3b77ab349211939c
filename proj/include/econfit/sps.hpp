#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "econfit/fitness.hpp"

namespace econfit {

using CountryYear = std::pair<std::string, int>;
/// (country, year) -> value; used for GDP per capita, actuals and baselines.
using CountryYearTable = std::map<CountryYear, double>;

/// A country-year in the (log fitness, log GDPpc) plane.
struct PanelPoint {
    std::string country;
    int year = 0;
    double log_fitness = 0.0;
    double log_gdppc = 0.0;
};

/**
 * Panel of plane points with forward h-year displacements
 * Δ = log_gdppc(year + h) - log_gdppc(year), defined exactly when both
 * endpoints are in the panel. Points are kept sorted by (country, year).
 */
class PanelDataset {
public:
    PanelDataset(std::vector<PanelPoint> points, int horizon = 5);

    const std::vector<PanelPoint>& points() const noexcept { return points_; }
    int horizon() const noexcept { return horizon_; }
    std::optional<double> displacement(const std::string& country, int year) const;
    const std::map<CountryYear, double>& displacements() const noexcept { return displacement_; }
    std::optional<PanelPoint> point(const std::string& country, int year) const;
    int first_year() const noexcept { return first_year_; }
    int last_year() const noexcept { return last_year_; }

private:
    std::vector<PanelPoint> points_;
    int horizon_;
    std::map<CountryYear, std::size_t> index_;
    std::map<CountryYear, double> displacement_;
    int first_year_ = 0, last_year_ = 0;
};

/// One point per (country, year) present in both the rankings and `gdppc`.
/// log_fitness is the natural log of the mean-normalized fitness.
PanelDataset build_panel(const std::map<int, RankingResult>& rankings, const CountryYearTable& gdppc,
                         int horizon = 5);

enum class Regime { laminar, chaotic };
const char* to_string(Regime regime);

/// Laminar iff dispersion < threshold.
Regime classify_regime(double dispersion, double threshold);

struct Analogue {
    PanelPoint point;
    double displacement = 0.0;
    double distance = 0.0; // in per-axis z-standardized units
    int horizon = 0;
    int end_year() const noexcept { return point.year + horizon; }
};

struct AnalogueSet {
    std::vector<Analogue> analogues;
    bool truncated = false; // fewer than k eligible points
};

/**
 * k nearest eligible points to `query`. Eligible points carry a displacement
 * ending no later than `cutoff_year` and belong to another country. Both
 * axes are z-standardized over the eligible set; ties are broken by
 * (year, country). Throws when nothing is eligible.
 */
AnalogueSet find_analogues(const PanelDataset& panel, const PanelPoint& query, int k, int cutoff_year);

struct SpsOptions {
    int k = 20;
    double laminar_threshold = 0.1;
    double blend = 0.5; // SPS+trend weight of the country's own last displacement

    void validate() const;
};

struct Forecast {
    std::string country;
    int base_year = 0;
    double predicted_growth = 0.0;
    int analogue_count = 0;
    double dispersion = 0.0; // sample sd of analogue displacements
    Regime regime = Regime::chaotic;
    double analogue_mean = 0.0;
    bool truncated = false; // fewer than k analogues were available
    bool trend_fallback = false; // SPS+trend without own history
    std::vector<Analogue> analogues;
};

/// Mean of the analogue displacements.
Forecast forecast_sps(const PanelDataset& panel, const PanelPoint& query, int cutoff_year, const SpsOptions& opts);

/// blend * own last displacement + (1 - blend) * analogue mean. Falls back
/// to `forecast_sps` (flagged) when the country has no displacement ending
/// at or before the base year.
Forecast forecast_sps_trend(const PanelDataset& panel, const PanelPoint& query, int cutoff_year,
                            const SpsOptions& opts);

struct ErrorStats {
    double mae = 0.0;
    double rmse = 0.0;
    std::size_t n = 0;
};

struct EvaluationReport {
    double mae = 0.0;
    double rmse = 0.0;
    std::pair<double, double> ci_mae{0.0, 0.0};
    std::pair<double, double> ci_rmse{0.0, 0.0};
    std::size_t n = 0;
    std::map<Regime, ErrorStats> per_regime;
};

/// MAE, RMSE and 3-sigma intervals. The MAE interval uses the standard error
/// of the absolute errors; the RMSE interval applies the delta method to the
/// standard error of the squared errors. Lower bounds are clamped at zero.
EvaluationReport evaluate(const std::vector<Forecast>& forecasts, const CountryYearTable& actuals);

struct BacktestResult {
    EvaluationReport sps;
    EvaluationReport sps_trend;
    std::optional<EvaluationReport> baseline;
    std::vector<Forecast> sps_forecasts;
    std::vector<Forecast> trend_forecasts;
    CountryYearTable actuals;
};

/**
 * Out-of-sample backtest. Every panel point whose displacement is known is
 * forecast with cutoff_year = its base year. All methods are scored on the
 * same (country, base_year) set; when a baseline is given the set is
 * restricted to the keys it covers. Requires a span of at least 2h+1 years.
 */
BacktestResult backtest(const PanelDataset& panel, const SpsOptions& opts,
                        const std::optional<CountryYearTable>& baseline = std::nullopt);

/// Leak-free constant-growth predictions: for each point, the mean of every
/// displacement in the panel ending at or before its year.
CountryYearTable naive_constant_growth(const PanelDataset& panel);

/// Least-squares line of log_gdppc on log_fitness, drawn as the equilibrium
/// diagonal in trajectory plots.
struct EquilibriumLine {
    double slope = 0.0;
    double intercept = 0.0;
};
EquilibriumLine equilibrium_line(const PanelDataset& panel);

/// Regime of every point that has analogues, using all displacements in the
/// panel (cutoff = last year). For flow-chart plots only.
std::map<CountryYear, Regime> plane_regimes(const PanelDataset& panel, const SpsOptions& opts);

/**
 * Synthetic two-region panel.
 *
 * Laminar countries start at log_fitness ~ U[0, 1], log_gdppc ~ U[8, 10],
 * drift +0.01 per year in log_fitness and grow each year by
 * 0.02 + 0.04 (x - 0.5) - 0.02 (y - 9) + N(0, laminar_noise).
 * Chaotic countries start at log_fitness ~ U[-3, -2], log_gdppc ~ U[6, 8],
 * jitter N(0, 0.02) in log_fitness and grow by N(0.01, chaotic_noise).
 * All draws come from UniformStream(seed) in a fixed order.
 */
struct FlowPanelSpec {
    int laminar_countries = 20;
    int chaotic_countries = 20;
    int first_year = 1990;
    int years = 26;
    int horizon = 5;
    double laminar_noise = 0.002;
    double chaotic_noise = 0.06;
};
PanelDataset synthetic_flow_panel(const FlowPanelSpec& spec, std::uint64_t seed);

/// `country,year,gdppc` (a `gdp` third column is accepted as well).
CountryYearTable read_gdppc_csv(std::istream& in);
/// `country,base_year,predicted_growth`.
CountryYearTable read_baseline_csv(std::istream& in);
/// Reads `country,year,log_fitness,log_gdppc[,...]`; extra columns are ignored.
PanelDataset read_plane_csv(std::istream& in, int horizon);
/// `country,year,log_fitness,log_gdppc,displacement,regime`; empty cells when absent.
void write_plane_csv(std::ostream& out, const PanelDataset& panel, const std::map<CountryYear, Regime>& regimes);

} // namespace econfit
