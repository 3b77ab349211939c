#include "econfit/sps.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "csv.hpp"
#include "econfit/error.hpp"
#include "econfit/rng.hpp"

namespace econfit {

// ---------------------------------------------------------------- panel

PanelDataset::PanelDataset(std::vector<PanelPoint> points, int horizon) : points_(std::move(points)), horizon_(horizon) {
    if (horizon_ < 1) throw Error("horizon must be >= 1");
    if (points_.empty()) throw Error("empty panel");
    std::sort(points_.begin(), points_.end(), [](const PanelPoint& a, const PanelPoint& b) {
        return std::tie(a.country, a.year) < std::tie(b.country, b.year);
    });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& pt = points_[i];
        if (pt.country.empty()) throw Error("panel point with empty country");
        if (!std::isfinite(pt.log_fitness) || !std::isfinite(pt.log_gdppc))
            throw Error("non-finite panel coordinates for " + pt.country + "@" + std::to_string(pt.year));
        if (!index_.emplace(CountryYear{pt.country, pt.year}, i).second)
            throw Error("duplicate panel point " + pt.country + "@" + std::to_string(pt.year));
    }
    first_year_ = points_.front().year;
    last_year_ = points_.front().year;
    for (const auto& pt : points_) {
        first_year_ = std::min(first_year_, pt.year);
        last_year_ = std::max(last_year_, pt.year);
        const auto end = index_.find({pt.country, pt.year + horizon_});
        if (end != index_.end())
            displacement_.emplace(CountryYear{pt.country, pt.year}, points_[end->second].log_gdppc - pt.log_gdppc);
    }
}

std::optional<double> PanelDataset::displacement(const std::string& country, int year) const {
    const auto it = displacement_.find({country, year});
    if (it == displacement_.end()) return std::nullopt;
    return it->second;
}

std::optional<PanelPoint> PanelDataset::point(const std::string& country, int year) const {
    const auto it = index_.find({country, year});
    if (it == index_.end()) return std::nullopt;
    return points_[it->second];
}

PanelDataset build_panel(const std::map<int, RankingResult>& rankings, const CountryYearTable& gdppc, int horizon) {
    if (rankings.size() < 2) throw Error("panel needs rankings for at least two years");
    for (const auto& [key, value] : gdppc)
        if (!(value > 0.0) || !std::isfinite(value))
            throw Error("GDP per capita must be positive for " + key.first + "@" + std::to_string(key.second));
    std::vector<PanelPoint> points;
    for (const auto& [year, ranking] : rankings) {
        for (std::size_t c = 0; c < ranking.countries.size(); ++c) {
            const auto it = gdppc.find({ranking.countries[c], year});
            if (it == gdppc.end()) continue;
            points.push_back({ranking.countries[c], year, std::log(ranking.fitness[c]), std::log(it->second)});
        }
    }
    if (points.empty()) throw Error("empty panel: no (country, year) appears in both rankings and GDP data");
    return PanelDataset(std::move(points), horizon);
}

// ---------------------------------------------------------------- analogues

const char* to_string(Regime regime) {
    return regime == Regime::laminar ? "laminar" : "chaotic";
}

Regime classify_regime(double dispersion, double threshold) {
    if (!(threshold > 0.0)) throw Error("laminar threshold must be positive");
    return dispersion < threshold ? Regime::laminar : Regime::chaotic;
}

void SpsOptions::validate() const {
    if (k < 1) throw Error("k must be >= 1");
    if (!(laminar_threshold > 0.0)) throw Error("laminar threshold must be positive");
    if (!(blend >= 0.0 && blend <= 1.0)) throw Error("blend must lie in [0, 1]");
}

namespace {

struct AxisScale {
    double mean = 0.0;
    double sd = 1.0;
    double apply(double v) const { return (v - mean) / sd; }
};

AxisScale axis_scale(const std::vector<double>& values) {
    AxisScale s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / n);
    s.sd = sd > 0.0 ? sd : 1.0;
    return s;
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string key_name(const std::string& country, int year) {
    return country + "@" + std::to_string(year);
}

} // namespace

AnalogueSet find_analogues(const PanelDataset& panel, const PanelPoint& query, int k, int cutoff_year) {
    if (k < 1) throw Error("k must be >= 1");
    const int h = panel.horizon();

    std::vector<const PanelPoint*> eligible;
    std::vector<double> xs, ys;
    for (const auto& pt : panel.points()) {
        if (pt.country == query.country || pt.year + h > cutoff_year) continue;
        if (!panel.displacement(pt.country, pt.year)) continue;
        eligible.push_back(&pt);
        xs.push_back(pt.log_fitness);
        ys.push_back(pt.log_gdppc);
    }
    if (eligible.empty())
        throw Error("no eligible analogues for " + key_name(query.country, query.year) + " with cutoff " +
                    std::to_string(cutoff_year));

    const auto sx = axis_scale(xs);
    const auto sy = axis_scale(ys);
    const double qx = sx.apply(query.log_fitness), qy = sy.apply(query.log_gdppc);

    std::vector<Analogue> all;
    all.reserve(eligible.size());
    for (const auto* pt : eligible) {
        const double dx = sx.apply(pt->log_fitness) - qx;
        const double dy = sy.apply(pt->log_gdppc) - qy;
        all.push_back({*pt, *panel.displacement(pt->country, pt->year), std::sqrt(dx * dx + dy * dy), h});
    }
    const auto closer = [](const Analogue& a, const Analogue& b) {
        return std::tie(a.distance, a.point.year, a.point.country) < std::tie(b.distance, b.point.year, b.point.country);
    };
    AnalogueSet out;
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), closer);
    all.resize(take);
    out.analogues = std::move(all);
    out.truncated = out.analogues.size() < static_cast<std::size_t>(k);
    return out;
}

Forecast forecast_sps(const PanelDataset& panel, const PanelPoint& query, int cutoff_year, const SpsOptions& opts) {
    opts.validate();
    auto set = find_analogues(panel, query, opts.k, cutoff_year);
    std::vector<double> deltas;
    for (const auto& a : set.analogues) deltas.push_back(a.displacement);

    Forecast f;
    f.country = query.country;
    f.base_year = query.year;
    f.analogue_mean = std::accumulate(deltas.begin(), deltas.end(), 0.0) / static_cast<double>(deltas.size());
    f.predicted_growth = f.analogue_mean;
    f.analogue_count = static_cast<int>(deltas.size());
    f.dispersion = sample_sd(deltas);
    f.regime = classify_regime(f.dispersion, opts.laminar_threshold);
    f.truncated = set.truncated;
    f.analogues = std::move(set.analogues);
    return f;
}

Forecast forecast_sps_trend(const PanelDataset& panel, const PanelPoint& query, int cutoff_year,
                            const SpsOptions& opts) {
    auto f = forecast_sps(panel, query, cutoff_year, opts);
    const int latest_end = std::min(query.year, cutoff_year);
    std::optional<double> own;
    for (int start = latest_end - panel.horizon(); start >= panel.first_year(); --start) {
        if ((own = panel.displacement(query.country, start))) break;
    }
    if (!own) {
        f.trend_fallback = true;
        return f;
    }
    f.predicted_growth = opts.blend * *own + (1.0 - opts.blend) * f.analogue_mean;
    return f;
}

// ---------------------------------------------------------------- evaluation

EvaluationReport evaluate(const std::vector<Forecast>& forecasts, const CountryYearTable& actuals) {
    if (forecasts.empty()) throw Error("nothing to evaluate");
    std::vector<double> abs_err, sq_err;
    struct Acc {
        double abs = 0.0, sq = 0.0;
        std::size_t n = 0;
    };
    std::map<Regime, Acc> by_regime;
    for (const auto& f : forecasts) {
        const auto it = actuals.find({f.country, f.base_year});
        if (it == actuals.end()) throw Error("no actual value for forecast " + key_name(f.country, f.base_year));
        const double e = f.predicted_growth - it->second;
        abs_err.push_back(std::abs(e));
        sq_err.push_back(e * e);
        auto& acc = by_regime[f.regime];
        acc.abs += std::abs(e);
        acc.sq += e * e;
        ++acc.n;
    }

    const double n = static_cast<double>(abs_err.size());
    EvaluationReport r;
    r.n = abs_err.size();
    r.mae = std::accumulate(abs_err.begin(), abs_err.end(), 0.0) / n;
    const double mse = std::accumulate(sq_err.begin(), sq_err.end(), 0.0) / n;
    // sqrt(mean e^2) >= mean |e| holds exactly; rounding can break the equality case.
    r.rmse = std::max(std::sqrt(mse), r.mae);

    const double se_mae = sample_sd(abs_err) / std::sqrt(n);
    const double se_mse = sample_sd(sq_err) / std::sqrt(n);
    const double se_rmse = r.rmse > 0.0 ? se_mse / (2.0 * r.rmse) : 0.0;
    r.ci_mae = {std::max(0.0, r.mae - 3.0 * se_mae), r.mae + 3.0 * se_mae};
    r.ci_rmse = {std::max(0.0, r.rmse - 3.0 * se_rmse), r.rmse + 3.0 * se_rmse};

    for (const auto& [regime, acc] : by_regime) {
        const double m = static_cast<double>(acc.n);
        const double mae = acc.abs / m;
        r.per_regime[regime] = {mae, std::max(std::sqrt(acc.sq / m), mae), acc.n};
    }
    return r;
}

CountryYearTable naive_constant_growth(const PanelDataset& panel) {
    const int h = panel.horizon();
    std::map<int, std::pair<double, std::size_t>> by_end_year;
    for (const auto& [key, delta] : panel.displacements()) {
        auto& [sum, count] = by_end_year[key.second + h];
        sum += delta;
        ++count;
    }
    CountryYearTable out;
    for (const auto& pt : panel.points()) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& [end_year, acc] : by_end_year) {
            if (end_year > pt.year) break;
            sum += acc.first;
            count += acc.second;
        }
        if (count > 0) out[{pt.country, pt.year}] = sum / static_cast<double>(count);
    }
    return out;
}

BacktestResult backtest(const PanelDataset& panel, const SpsOptions& opts, const std::optional<CountryYearTable>& baseline) {
    opts.validate();
    const int h = panel.horizon();
    if (panel.last_year() - panel.first_year() + 1 < 2 * h + 1)
        throw Error("insufficient span: backtest needs at least " + std::to_string(2 * h + 1) + " years");

    BacktestResult out;
    for (const auto& pt : panel.points()) {
        const auto actual = panel.displacement(pt.country, pt.year);
        if (!actual) continue;
        if (baseline && !baseline->count({pt.country, pt.year})) continue;
        Forecast sps;
        try {
            sps = forecast_sps(panel, pt, pt.year, opts);
        } catch (const Error&) {
            continue; // no history yet at this base year
        }
        out.trend_forecasts.push_back(forecast_sps_trend(panel, pt, pt.year, opts));
        out.sps_forecasts.push_back(std::move(sps));
        out.actuals[{pt.country, pt.year}] = *actual;
    }
    if (out.sps_forecasts.empty()) throw Error("backtest produced no forecasts");

    out.sps = evaluate(out.sps_forecasts, out.actuals);
    out.sps_trend = evaluate(out.trend_forecasts, out.actuals);
    if (baseline) {
        std::vector<Forecast> scored;
        for (const auto& f : out.sps_forecasts) {
            Forecast b;
            b.country = f.country;
            b.base_year = f.base_year;
            b.predicted_growth = baseline->at({f.country, f.base_year});
            b.regime = f.regime; // scored against the SPS predictability zones
            scored.push_back(std::move(b));
        }
        out.baseline = evaluate(scored, out.actuals);
    }
    return out;
}

EquilibriumLine equilibrium_line(const PanelDataset& panel) {
    const auto& pts = panel.points();
    const double n = static_cast<double>(pts.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p.log_fitness;
        my += p.log_gdppc;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        sxx += (p.log_fitness - mx) * (p.log_fitness - mx);
        sxy += (p.log_fitness - mx) * (p.log_gdppc - my);
    }
    if (!(sxx > 0.0)) throw Error("equilibrium line needs variation in log fitness");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::map<CountryYear, Regime> plane_regimes(const PanelDataset& panel, const SpsOptions& opts) {
    std::map<CountryYear, Regime> out;
    for (const auto& pt : panel.points()) {
        try {
            out[{pt.country, pt.year}] = forecast_sps(panel, pt, panel.last_year(), opts).regime;
        } catch (const Error&) {
        }
    }
    return out;
}

// ---------------------------------------------------------------- synthetic panel

PanelDataset synthetic_flow_panel(const FlowPanelSpec& spec, std::uint64_t seed) {
    if (spec.laminar_countries < 0 || spec.chaotic_countries < 0 || spec.laminar_countries + spec.chaotic_countries < 2)
        throw Error("synthetic panel needs at least two countries");
    if (spec.years < 2 || spec.horizon < 1) throw Error("synthetic panel needs >= 2 years and horizon >= 1");
    UniformStream stream(seed);
    std::vector<PanelPoint> points;
    const int total = spec.laminar_countries + spec.chaotic_countries;
    const auto width = std::to_string(total).size();
    for (int i = 0; i < total; ++i) {
        const bool laminar = i < spec.laminar_countries;
        auto digits = std::to_string(i + 1);
        const std::string id = std::string(laminar ? "L" : "X") + std::string(width - digits.size(), '0') + digits;
        double x = laminar ? stream.next() : -3.0 + stream.next();
        double y = laminar ? 8.0 + 2.0 * stream.next() : 6.0 + 2.0 * stream.next();
        for (int t = 0; t < spec.years; ++t) {
            points.push_back({id, spec.first_year + t, x, y});
            if (laminar) {
                y += 0.02 + 0.04 * (x - 0.5) - 0.02 * (y - 9.0) + spec.laminar_noise * standard_normal(stream);
                x += 0.01;
            } else {
                y += 0.01 + spec.chaotic_noise * standard_normal(stream);
                x += 0.02 * standard_normal(stream);
            }
        }
    }
    return PanelDataset(std::move(points), spec.horizon);
}

// ---------------------------------------------------------------- file formats

CountryYearTable read_gdppc_csv(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw Error("no records");
    const auto header = csv::split(line, reader.line_no());
    if (header.size() != 3 || header[0] != "country" || header[1] != "year" || (header[2] != "gdppc" && header[2] != "gdp"))
        throw ParseError(reader.line_no(), "expected header 'country,year,gdppc'");
    CountryYearTable out;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        const auto f = csv::split(line, n);
        if (f.size() != 3) throw ParseError(n, "expected 3 fields");
        const double v = csv::parse_double(f[2], n, header[2]);
        if (!(v > 0.0)) throw ParseError(n, header[2] + " must be positive");
        if (!out.emplace(CountryYear{f[0], static_cast<int>(csv::parse_int(f[1], n, "year"))}, v).second)
            throw ParseError(n, "duplicate (country, year)");
    }
    if (out.empty()) throw Error("no records");
    return out;
}

CountryYearTable read_baseline_csv(std::istream& in) {
    csv::LineReader reader(in);
    csv::expect_header(reader, {"country", "base_year", "predicted_growth"});
    CountryYearTable out;
    std::string line;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        const auto f = csv::split(line, n);
        if (f.size() != 3) throw ParseError(n, "expected 3 fields");
        const CountryYear key{f[0], static_cast<int>(csv::parse_int(f[1], n, "base_year"))};
        if (!out.emplace(key, csv::parse_double(f[2], n, "predicted_growth")).second)
            throw ParseError(n, "duplicate (country, base_year)");
    }
    if (out.empty()) throw Error("no records");
    return out;
}

PanelDataset read_plane_csv(std::istream& in, int horizon) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw Error("no records");
    const auto header = csv::split(line, reader.line_no());
    if (header.size() < 4 || header[0] != "country" || header[1] != "year" || header[2] != "log_fitness" ||
        header[3] != "log_gdppc")
        throw ParseError(reader.line_no(), "expected header starting 'country,year,log_fitness,log_gdppc'");
    std::vector<PanelPoint> points;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        const auto f = csv::split(line, n);
        if (f.size() != header.size()) throw ParseError(n, "expected " + std::to_string(header.size()) + " fields");
        points.push_back({f[0], static_cast<int>(csv::parse_int(f[1], n, "year")), csv::parse_double(f[2], n, "log_fitness"),
                          csv::parse_double(f[3], n, "log_gdppc")});
    }
    if (points.empty()) throw Error("no records");
    return PanelDataset(std::move(points), horizon);
}

void write_plane_csv(std::ostream& out, const PanelDataset& panel, const std::map<CountryYear, Regime>& regimes) {
    out << "country,year,log_fitness,log_gdppc,displacement,regime\n";
    for (const auto& pt : panel.points()) {
        out << csv::escape(pt.country) << ',' << pt.year << ',' << csv::format_double(pt.log_fitness) << ','
            << csv::format_double(pt.log_gdppc) << ',';
        if (const auto d = panel.displacement(pt.country, pt.year)) out << csv::format_double(*d);
        out << ',';
        if (const auto it = regimes.find({pt.country, pt.year}); it != regimes.end()) out << to_string(it->second);
        out << '\n';
    }
}

} // namespace econfit
