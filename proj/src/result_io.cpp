#include "econfit/result_io.hpp"

#include <ostream>

#include "csv.hpp"

namespace econfit {

using nlohmann::json;

namespace {

void write_rows(std::ostream& out, const std::vector<std::string>& ids, const char* kind,
                const std::vector<double>& values, const std::vector<int>& ranks) {
    for (std::size_t i = 0; i < ids.size(); ++i)
        out << csv::escape(ids[i]) << ',' << kind << ',' << csv::format_double(values[i]) << ',' << ranks[i] << '\n';
}

json scores(const std::vector<std::string>& ids, const std::vector<double>& values, const std::vector<int>& ranks) {
    json arr = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) arr.push_back({{"id", ids[i]}, {"value", values[i]}, {"rank", ranks[i]}});
    return arr;
}

json error_stats(const ErrorStats& s) {
    return {{"mae", s.mae}, {"rmse", s.rmse}, {"n", s.n}};
}

void backtest_rows(std::ostream& out, const char* method, const EvaluationReport& r) {
    out << method << ",all," << r.n << ',' << csv::format_double(r.mae) << ',' << csv::format_double(r.rmse) << ','
        << csv::format_double(r.ci_mae.first) << ',' << csv::format_double(r.ci_mae.second) << ','
        << csv::format_double(r.ci_rmse.first) << ',' << csv::format_double(r.ci_rmse.second) << '\n';
    for (const auto& [regime, s] : r.per_regime)
        out << method << ',' << to_string(regime) << ',' << s.n << ',' << csv::format_double(s.mae) << ','
            << csv::format_double(s.rmse) << ",,,,\n";
}

void forecast_rows(std::ostream& out, const char* method, const std::vector<Forecast>& fs) {
    for (const auto& f : fs)
        out << csv::escape(f.country) << ',' << f.base_year << ',' << method << ',' << csv::format_double(f.predicted_growth)
            << ',' << f.analogue_count << ',' << csv::format_double(f.dispersion) << ',' << to_string(f.regime) << ','
            << (f.truncated ? 1 : 0) << ',' << (f.trend_fallback ? 1 : 0) << '\n';
}

} // namespace

void write_ranking_csv(std::ostream& out, const RankingResult& r) {
    out << "entity,kind,value,rank\n";
    write_rows(out, r.countries, "fitness", r.fitness, r.country_rank);
    write_rows(out, r.products, "complexity", r.complexity, r.product_rank);
}

void write_ranking_csv(std::ostream& out, const EciResult& r) {
    out << "entity,kind,value,rank\n";
    write_rows(out, r.countries, "eci", r.eci, r.country_rank);
    write_rows(out, r.products, "pci", r.pci, r.product_rank);
}

json ranking_metadata(const RankingResult& r) {
    return {{"algorithm", "fitness"},
            {"iterations", r.iterations_used},
            {"converged", r.converged},
            {"stop_reason", to_string(r.stop_reason)},
            {"final_step", r.trace.empty() ? 0.0 : r.trace.back()}};
}

json ranking_metadata(const EciResult& r) {
    json j = {{"algorithm", "eci"}, {"iterations", r.iterations_used}, {"converged", r.converged}};
    if (r.eigenvalue != 0.0) j["eigenvalue"] = r.eigenvalue;
    return j;
}

json to_json(const RankingResult& r) {
    auto j = ranking_metadata(r);
    j["fitness"] = scores(r.countries, r.fitness, r.country_rank);
    j["complexity"] = scores(r.products, r.complexity, r.product_rank);
    j["trace"] = r.trace;
    return j;
}

json to_json(const EciResult& r) {
    auto j = ranking_metadata(r);
    j["eci"] = scores(r.countries, r.eci, r.country_rank);
    j["pci"] = scores(r.products, r.pci, r.product_rank);
    return j;
}

void write_spectroscopy_csv(std::ostream& out, const std::vector<SpectroscopyBar>& bars) {
    out << "product,complexity,rank\n";
    for (const auto& b : bars) out << csv::escape(b.product) << ',' << csv::format_double(b.complexity) << ',' << b.rank << '\n';
}

json to_json(const Forecast& f) {
    json analogues = json::array();
    for (const auto& a : f.analogues)
        analogues.push_back({{"country", a.point.country},
                             {"year", a.point.year},
                             {"end_year", a.end_year()},
                             {"displacement", a.displacement},
                             {"distance", a.distance}});
    return {{"country", f.country},
            {"base_year", f.base_year},
            {"predicted_growth", f.predicted_growth},
            {"analogue_mean", f.analogue_mean},
            {"analogue_count", f.analogue_count},
            {"dispersion", f.dispersion},
            {"regime", to_string(f.regime)},
            {"truncated", f.truncated},
            {"trend_fallback", f.trend_fallback},
            {"analogues", analogues}};
}

json to_json(const EvaluationReport& r) {
    json per = json::object();
    for (const auto& [regime, s] : r.per_regime) per[to_string(regime)] = error_stats(s);
    return {{"mae", r.mae},
            {"rmse", r.rmse},
            {"ci_mae", {r.ci_mae.first, r.ci_mae.second}},
            {"ci_rmse", {r.ci_rmse.first, r.ci_rmse.second}},
            {"n", r.n},
            {"per_regime", per}};
}

json to_json(const BacktestResult& r) {
    json j = {{"sps", to_json(r.sps)}, {"sps_trend", to_json(r.sps_trend)}};
    j["baseline"] = r.baseline ? to_json(*r.baseline) : json(nullptr);
    return j;
}

void write_forecasts_csv(std::ostream& out, const std::vector<Forecast>& sps, const std::vector<Forecast>& trend) {
    out << "country,base_year,method,predicted_growth,analogue_count,dispersion,regime,truncated,trend_fallback\n";
    forecast_rows(out, "sps", sps);
    forecast_rows(out, "sps_trend", trend);
}

void write_backtest_csv(std::ostream& out, const BacktestResult& r) {
    out << "method,regime,n,mae,rmse,ci_mae_low,ci_mae_high,ci_rmse_low,ci_rmse_high\n";
    backtest_rows(out, "sps", r.sps);
    backtest_rows(out, "sps_trend", r.sps_trend);
    if (r.baseline) backtest_rows(out, "baseline", *r.baseline);
}

} // namespace econfit
