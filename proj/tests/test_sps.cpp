#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "econfit/error.hpp"
#include "econfit/result_io.hpp"
#include "econfit/rng.hpp"
#include "econfit/sps.hpp"
#include "oracles.hpp"

using namespace econfit;

namespace {

RankingResult ranking(std::vector<std::string> countries, std::vector<double> fitness) {
    RankingResult r;
    r.countries = std::move(countries);
    r.fitness = std::move(fitness);
    return r;
}

// Countries B, C, ... with a single h-year displacement from a common start.
PanelDataset start_end_panel(const std::vector<double>& deltas, int horizon = 5) {
    std::vector<PanelPoint> pts;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const std::string id = "c" + std::to_string(i);
        pts.push_back({id, 2000, 0.0, 1.0});
        pts.push_back({id, 2000 + horizon, 0.0, 1.0 + deltas[i]});
    }
    pts.push_back({"Q", 2005, 0.0, 1.0});
    return PanelDataset(pts, horizon);
}

// Square grid of countries at 2000, each moving by f(x, y) + noise by 2005.
PanelDataset grid_panel(int side, double spacing, double (*f)(double, double), double noise, std::uint64_t seed) {
    UniformStream rng(seed);
    std::vector<PanelPoint> pts;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            const std::string id = "g" + std::to_string(i * side + j + 1000);
            const double x = spacing * i, y = spacing * j;
            pts.push_back({id, 2000, x, y});
            pts.push_back({id, 2005, x, y + f(x, y) + noise * standard_normal(rng)});
        }
    return PanelDataset(pts, 5);
}

double linear_flow(double x, double y) {
    return 0.05 + 0.01 * x + 0.005 * y;
}

Forecast forecast(const std::string& country, int year, double prediction, Regime regime = Regime::laminar) {
    Forecast f;
    f.country = country;
    f.base_year = year;
    f.predicted_growth = prediction;
    f.regime = regime;
    return f;
}

EvaluationReport score(const std::vector<double>& preds, const std::vector<double>& actuals) {
    std::vector<Forecast> fs;
    CountryYearTable table;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        fs.push_back(forecast("c" + std::to_string(i), 2000, preds[i]));
        table[{"c" + std::to_string(i), 2000}] = actuals[i];
    }
    return evaluate(fs, table);
}

SpsOptions flow_options() {
    SpsOptions o;
    o.laminar_threshold = 0.07;
    return o;
}

} // namespace

TEST_CASE("build_panel examples") {
    std::map<int, RankingResult> rankings{{2000, ranking({"A"}, {1.0})}, {2005, ranking({"A"}, {1.0})}};
    const auto p = build_panel(rankings, {{{"A", 2000}, 100.0}, {{"A", 2005}, 200.0}}, 5);
    REQUIRE(p.points().size() == 2);
    CHECK(*p.displacement("A", 2000) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK_FALSE(p.displacement("A", 2005));
    CHECK(p.points()[0].log_fitness == 0.0);

    std::map<int, RankingResult> two{{2000, ranking({"A", "B"}, {0.5, 1.5})}, {2005, ranking({"A", "B"}, {0.5, 1.5})}};
    const auto q = build_panel(two, {{{"A", 2000}, 1.0}, {{"A", 2005}, 2.0}, {{"B", 2000}, 3.0}}, 5);
    CHECK(q.points().size() == 3);
    CHECK_FALSE(q.point("B", 2005));
    CHECK(q.point("B", 2000)->log_fitness == doctest::Approx(std::log(1.5)));

    std::map<int, RankingResult> short_span;
    CountryYearTable gdp;
    for (int y = 2000; y <= 2003; ++y) {
        short_span[y] = ranking({"A"}, {1.0});
        gdp[{"A", y}] = 10.0 + y;
    }
    const auto s = build_panel(short_span, gdp, 5);
    CHECK(s.points().size() == 4);
    CHECK(s.displacements().empty());
}

TEST_CASE("build_panel errors") {
    std::map<int, RankingResult> one{{2000, ranking({"A"}, {1.0})}};
    CHECK_THROWS_AS(build_panel(one, {{{"A", 2000}, 1.0}}, 5), Error);
    std::map<int, RankingResult> two{{2000, ranking({"A"}, {1.0})}, {2001, ranking({"A"}, {1.0})}};
    CHECK_THROWS_AS(build_panel(two, {{{"B", 2000}, 1.0}}, 5), Error);
    CHECK_THROWS_AS(build_panel(two, {{{"A", 2000}, 0.0}}, 5), Error);
    CHECK_THROWS_AS(PanelDataset({}, 5), Error);
    CHECK_THROWS_AS(PanelDataset({{"A", 2000, 0, 0}}, 0), Error);
    CHECK_THROWS_AS(PanelDataset({{"A", 2000, 0, 0}, {"A", 2000, 1, 1}}, 5), Error);
}

TEST_CASE("analogue examples") {
    const PanelDataset p({{"B", 2000, 1.0, 2.0}, {"B", 2005, 1.0, 2.5}, {"C", 2000, 3.0, 1.0}, {"C", 2005, 3.0, 1.2}}, 5);
    const auto one = find_analogues(p, {"A", 2005, 1.0, 2.0}, 1, 2005);
    REQUIRE(one.analogues.size() == 1);
    CHECK(one.analogues[0].point.country == "B");
    CHECK(one.analogues[0].distance == 0.0);
    CHECK(one.analogues[0].displacement == doctest::Approx(0.5));
    CHECK_FALSE(one.truncated);

    const auto all = find_analogues(p, {"A", 2005, 1.0, 2.0}, 5, 2005);
    CHECK(all.analogues.size() == 2);
    CHECK(all.truncated);

    CHECK_THROWS_AS(find_analogues(p, {"A", 2004, 1.0, 2.0}, 1, 2004), Error);
    CHECK_THROWS_AS(find_analogues(p, {"A", 2005, 1.0, 2.0}, 0, 2005), Error);
    const auto own = find_analogues(p, {"B", 2005, 1.0, 2.0}, 3, 2005);
    REQUIRE(own.analogues.size() == 1);
    CHECK(own.analogues[0].point.country == "C");
}

TEST_CASE("analogues on a grid match a brute-force sort") {
    const double spacing = 0.25;
    std::vector<oracle::PlanePoint> pts;
    std::vector<PanelPoint> panel_pts;
    UniformStream rng(77);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int year : {2000, 2001, 2002}) {
                const std::string id = "n" + std::to_string(i) + std::to_string(j);
                const double x = spacing * i + 0.1 * (year - 2000), y = spacing * j;
                panel_pts.push_back({id, year, x, y});
                panel_pts.push_back({id, year + 10, x, y + rng.next()});
            }
    const PanelDataset panel(panel_pts, 10);
    for (const auto& pt : panel.points()) {
        const auto d = panel.displacement(pt.country, pt.year);
        pts.push_back({pt.country, pt.year, pt.log_fitness, pt.log_gdppc, d.has_value(), d.value_or(0.0)});
    }
    for (const auto& query : std::vector<PanelPoint>{{"n00", 2012, 0.5, 0.5}, {"zz", 2012, 0.3, 0.75}, {"n23", 2011, 1.1, 0.2}}) {
        for (int k : {1, 4, 9, 30}) {
            const auto got = find_analogues(panel, query, k, query.year);
            const auto want = oracle::nearest(pts, query.country, query.log_fitness, query.log_gdppc, 10, query.year,
                                              static_cast<std::size_t>(k));
            REQUIRE(got.analogues.size() == want.size());
            for (std::size_t i = 0; i < want.size(); ++i) {
                CHECK(got.analogues[i].point.country == pts[want[i]].country);
                CHECK(got.analogues[i].point.year == pts[want[i]].year);
            }
        }
    }
}

TEST_CASE("forecast_sps examples") {
    SpsOptions o;
    o.k = 3;
    const auto flat = forecast_sps(start_end_panel({0.2, 0.2, 0.2}), {"Q", 2005, 0.0, 1.0}, 2005, o);
    CHECK(flat.predicted_growth == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(flat.dispersion == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flat.regime == Regime::laminar);
    CHECK(flat.analogue_count == 3);

    o.k = 2;
    const auto two = forecast_sps(start_end_panel({0.1, 0.3}), {"Q", 2005, 0.0, 1.0}, 2005, o);
    CHECK(two.predicted_growth == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(two.dispersion == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
    CHECK(two.dispersion == doctest::Approx(0.1414).epsilon(1e-4));

    o.k = 1;
    CHECK(forecast_sps(start_end_panel({0.1, 0.3}), {"Q", 2005, 0.0, 1.0}, 2005, o).dispersion == 0.0);
    o.k = 0;
    CHECK_THROWS_AS(forecast_sps(start_end_panel({0.1}), {"Q", 2005, 0.0, 1.0}, 2005, o), Error);
}

TEST_CASE("forecast on a laminar flow field recovers the field") {
    const double noise = 0.001;
    const auto panel = grid_panel(21, 0.1, linear_flow, noise, 5);
    SpsOptions o;
    o.k = 21; // the query node plus its four symmetric distance shells
    for (const auto& [x, y] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.5, 1.5}, {1.5, 0.7}}) {
        const auto f = forecast_sps(panel, {"Q", 2005, x, y}, 2005, o);
        CHECK(std::abs(f.predicted_growth - linear_flow(x, y)) < 2.0 * noise);
        CHECK(f.dispersion < 0.01);
    }
}

TEST_CASE("forecast_sps_trend examples") {
    std::vector<PanelPoint> pts{{"Q", 1995, 0.0, 0.6}, {"Q", 2000, 0.0, 1.0}};
    for (int i = 0; i < 3; ++i) {
        const std::string id = "c" + std::to_string(i);
        pts.push_back({id, 2000, 0.0, 1.0});
        pts.push_back({id, 2005, 0.0, 1.2});
    }
    const PanelDataset panel(pts, 5);
    const PanelPoint q{"Q", 2005, 0.0, 1.0};
    SpsOptions o;
    o.k = 3;
    const auto plain = forecast_sps(panel, q, 2005, o);
    o.blend = 0.0;
    CHECK(forecast_sps_trend(panel, q, 2005, o).predicted_growth == plain.predicted_growth);
    o.blend = 1.0;
    const auto own = forecast_sps_trend(panel, q, 2005, o);
    CHECK(own.predicted_growth == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_FALSE(own.trend_fallback);
    o.blend = 0.5;
    CHECK(forecast_sps_trend(panel, q, 2005, o).predicted_growth == doctest::Approx(0.3).epsilon(1e-12));

    const auto none = forecast_sps_trend(start_end_panel({0.2, 0.4}), q, 2005, o);
    CHECK(none.trend_fallback);
    CHECK(none.predicted_growth == doctest::Approx(0.3).epsilon(1e-12));
    o.blend = 1.5;
    CHECK_THROWS_AS(forecast_sps_trend(panel, q, 2005, o), Error);
}

TEST_CASE("classify_regime") {
    CHECK(classify_regime(0.0, 0.1) == Regime::laminar);
    CHECK(classify_regime(0.1, 0.1) == Regime::chaotic);
    CHECK(classify_regime(0.0999, 0.1) == Regime::laminar);
    CHECK_THROWS_AS(classify_regime(0.1, 0.0), Error);
    CHECK(std::string(to_string(Regime::laminar)) == "laminar");
    CHECK(std::string(to_string(Regime::chaotic)) == "chaotic");
}

TEST_CASE("deterministic and noisy regions are classified apart") {
    UniformStream rng(8);
    std::vector<PanelPoint> pts;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const std::string calm = "a" + std::to_string(i * 5 + j + 10);
            pts.push_back({calm, 2000, 0.1 * i, 0.1 * j});
            pts.push_back({calm, 2005, 0.1 * i, 0.1 * j + 0.1});
            const std::string rough = "b" + std::to_string(i * 5 + j + 10);
            pts.push_back({rough, 2000, 5.0 + 0.1 * i, 5.0 + 0.1 * j});
            pts.push_back({rough, 2005, 5.0 + 0.1 * i, 5.0 + 0.1 * j + 0.2 * standard_normal(rng)});
        }
    const PanelDataset panel(pts, 5);
    SpsOptions o;
    o.k = 9;
    o.laminar_threshold = 0.05;
    const auto calm = forecast_sps(panel, {"Q", 2005, 0.2, 0.2}, 2005, o);
    const auto rough = forecast_sps(panel, {"Q", 2005, 5.2, 5.2}, 2005, o);
    CHECK(calm.dispersion < 1e-12);
    CHECK(rough.dispersion > 0.05);
    CHECK(calm.regime == Regime::laminar);
    CHECK(rough.regime == Regime::chaotic);
}

TEST_CASE("evaluate examples") {
    const auto r = score({1, 2, 3}, {1, 1, 5});
    CHECK(r.n == 3);
    CHECK(std::abs(r.mae - 1.0) <= 1e-12);
    CHECK(std::abs(r.rmse - std::sqrt(5.0 / 3.0)) <= 1e-12);
    CHECK(r.rmse == doctest::Approx(1.2910).epsilon(1e-4));
    CHECK(r.ci_mae.first <= r.mae);
    CHECK(r.ci_mae.second >= r.mae);
    CHECK(r.ci_rmse.first <= r.rmse);
    CHECK(r.ci_rmse.second >= r.rmse);
    CHECK(r.ci_mae.first >= 0.0);

    const auto perfect = score({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3});
    CHECK(perfect.mae == 0.0);
    CHECK(perfect.rmse == 0.0);
    CHECK(perfect.ci_mae == std::pair{0.0, 0.0});
    CHECK(perfect.ci_rmse == std::pair{0.0, 0.0});

    const auto same = score({0.3, -0.2, 1.5, 0.0}, {0.55, 0.05, 1.25, -0.25});
    CHECK(same.mae == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(same.rmse == doctest::Approx(same.mae).epsilon(1e-12));
}

TEST_CASE("evaluate interval widths") {
    // |e| = 0, 1, 2: sd 1 over sqrt(3)
    const auto r = score({0, 1, 2}, {0, 0, 0});
    CHECK(r.ci_mae.second == doctest::Approx(1.0 + 3.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.ci_mae.first == 0.0);
    // e^2 = 0, 1, 4: sd sqrt(13/3), mse 5/3
    const double rmse = std::sqrt(5.0 / 3.0);
    const double se = std::sqrt(13.0 / 3.0) / std::sqrt(3.0) / (2.0 * rmse);
    CHECK(r.ci_rmse.second == doctest::Approx(rmse + 3.0 * se).epsilon(1e-12));
    CHECK(r.ci_rmse.first == doctest::Approx(std::max(0.0, rmse - 3.0 * se)).epsilon(1e-12));
}

TEST_CASE("evaluate breaks down by regime") {
    std::vector<Forecast> fs{forecast("a", 2000, 1.0, Regime::laminar), forecast("b", 2000, 1.0, Regime::chaotic),
                             forecast("c", 2000, 1.0, Regime::chaotic)};
    const auto r = evaluate(fs, {{{"a", 2000}, 1.1}, {{"b", 2000}, 0.0}, {{"c", 2000}, 2.0}});
    CHECK(r.per_regime.at(Regime::laminar).n == 1);
    CHECK(r.per_regime.at(Regime::laminar).mae == doctest::Approx(0.1));
    CHECK(r.per_regime.at(Regime::chaotic).n == 2);
    CHECK(r.per_regime.at(Regime::chaotic).rmse == doctest::Approx(1.0));
}

TEST_CASE("evaluate errors") {
    CHECK_THROWS_AS(evaluate({}, {}), Error);
    CHECK_THROWS_WITH_AS(evaluate({forecast("a", 2000, 1.0)}, {{{"a", 2001}, 1.0}}), doctest::Contains("a@2000"), Error);
}

TEST_CASE("backtest requires 2h+1 years") {
    std::vector<PanelPoint> pts;
    for (int c = 0; c < 3; ++c)
        for (int y = 2000; y < 2010; ++y) pts.push_back({"c" + std::to_string(c), y, 0.1 * c, 0.01 * y});
    CHECK_THROWS_WITH_AS(backtest(PanelDataset(pts, 5), {}), doctest::Contains("insufficient span"), Error);
    pts.push_back({"c0", 2010, 0.0, 20.1});
    CHECK_NOTHROW(backtest(PanelDataset(pts, 5), {}));
}

TEST_CASE("backtest on the synthetic flow panel") {
    const auto panel = synthetic_flow_panel({}, 42);
    const auto naive = naive_constant_growth(panel);
    const auto r = backtest(panel, flow_options(), naive);
    REQUIRE(r.baseline);
    CHECK(r.sps.n == r.baseline->n);
    CHECK(r.sps_trend.n == r.sps.n);
    CHECK(r.sps.mae < r.baseline->mae);
    CHECK(r.sps.per_regime.at(Regime::laminar).rmse < r.sps.per_regime.at(Regime::chaotic).rmse);

    const auto exact = backtest(panel, flow_options(), panel.displacements());
    REQUIRE(exact.baseline);
    CHECK(exact.baseline->mae == 0.0);
    CHECK(exact.baseline->rmse == 0.0);
}

TEST_CASE("backtest restricts scoring to the baseline's keys") {
    const auto panel = synthetic_flow_panel({}, 42);
    CountryYearTable partial;
    for (const auto& [key, d] : panel.displacements())
        if (key.second % 2 == 0) partial[key] = d;
    const auto r = backtest(panel, flow_options(), partial);
    for (const auto& f : r.sps_forecasts) CHECK(partial.count({f.country, f.base_year}) == 1);
    CHECK(r.baseline->n == r.sps.n);
}

TEST_CASE("naive constant growth never looks ahead") {
    const auto panel = synthetic_flow_panel({}, 3);
    const auto naive = naive_constant_growth(panel);
    const int h = panel.horizon();
    for (const auto& [key, value] : naive) {
        double sum = 0.0;
        int n = 0;
        for (const auto& [k2, d] : panel.displacements())
            if (k2.second + h <= key.second) {
                sum += d;
                ++n;
            }
        REQUIRE(n > 0);
        CHECK(value == doctest::Approx(sum / n).epsilon(1e-12));
    }
    CHECK(naive.count({"L01", panel.first_year()}) == 0);
}

TEST_CASE("equilibrium line fits an exact line") {
    std::vector<PanelPoint> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({"c" + std::to_string(i), 2000, 0.5 * i, 3.0 + 2.0 * 0.5 * i});
    const auto line = equilibrium_line(PanelDataset(pts, 5));
    CHECK(line.slope == doctest::Approx(2.0));
    CHECK(line.intercept == doctest::Approx(3.0));
    CHECK_THROWS_AS(equilibrium_line(PanelDataset({{"a", 2000, 1, 1}, {"b", 2000, 1, 2}}, 5)), Error);
}

TEST_CASE("csv formats") {
    std::istringstream g("country,year,gdppc\nA,2000,100\nA,2005,200\n");
    const auto gdp = read_gdppc_csv(g);
    CHECK(gdp.at({"A", 2005}) == 200.0);
    std::istringstream gdp_total("country,year,gdp\nA,2000,1e9\n");
    CHECK(read_gdppc_csv(gdp_total).size() == 1);
    std::istringstream bad_value("country,year,gdppc\nA,2000,0\n");
    CHECK_THROWS_AS(read_gdppc_csv(bad_value), ParseError);
    std::istringstream bad_header("country,yr,gdppc\n");
    CHECK_THROWS_AS(read_gdppc_csv(bad_header), ParseError);
    std::istringstream duplicate("country,year,gdppc\nA,2000,1\nA,2000,2\n");
    CHECK_THROWS_AS(read_gdppc_csv(duplicate), ParseError);

    std::istringstream b("country,base_year,predicted_growth\nA,2000,0.1\nB,2000,-0.05\n");
    const auto base = read_baseline_csv(b);
    CHECK(base.at({"B", 2000}) == -0.05);
    std::istringstream empty_base("country,base_year,predicted_growth\n");
    CHECK_THROWS_AS(read_baseline_csv(empty_base), Error);

    const auto panel = synthetic_flow_panel({3, 2, 2000, 12, 5, 0.002, 0.06}, 1);
    const auto regimes = plane_regimes(panel, {});
    std::ostringstream out;
    write_plane_csv(out, panel, regimes);
    CHECK(out.str().rfind("country,year,log_fitness,log_gdppc,displacement,regime\n", 0) == 0);
    std::istringstream in(out.str());
    const auto back = read_plane_csv(in, 5);
    REQUIRE(back.points().size() == panel.points().size());
    for (std::size_t i = 0; i < back.points().size(); ++i) {
        CHECK(back.points()[i].log_fitness == panel.points()[i].log_fitness);
        CHECK(back.points()[i].log_gdppc == panel.points()[i].log_gdppc);
    }
    CHECK(back.displacements() == panel.displacements());
}

TEST_CASE("synthetic flow panel layout") {
    const auto p = synthetic_flow_panel({}, 42);
    CHECK(p.points().size() == 40 * 26);
    CHECK(p.first_year() == 1990);
    CHECK(p.last_year() == 2015);
    CHECK(p.point("L01", 1990));
    CHECK(p.point("X40", 2015));
    CHECK(p.displacements().size() == 40 * 21);
    CHECK_THROWS_AS(synthetic_flow_panel({1, 0, 1990, 26, 5, 0.0, 0.0}, 1), Error);
}

TEST_CASE("property: no leakage and self-exclusion in every backtest forecast") {
    for (std::uint64_t seed : {1u, 2u, 42u}) {
        const auto panel = synthetic_flow_panel({}, seed);
        const auto r = backtest(panel, flow_options());
        std::size_t violations = 0;
        for (const auto* set : {&r.sps_forecasts, &r.trend_forecasts})
            for (const auto& f : *set)
                for (const auto& a : f.analogues)
                    if (a.end_year() > f.base_year || a.point.country == f.country) ++violations;
        CHECK(violations == 0);
        CHECK(r.sps_forecasts.size() > 100);
    }
}

TEST_CASE("property: rmse >= mae, with equality for equal magnitudes") {
    UniformStream rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = 1 + static_cast<std::size_t>(rng.next() * 30);
        std::vector<double> preds(n), actuals(n, 0.0);
        for (auto& p : preds) p = 4.0 * rng.next() - 2.0;
        const auto r = score(preds, actuals);
        CHECK(r.rmse >= r.mae);
        for (const auto& [regime, s] : r.per_regime) CHECK(s.rmse >= s.mae);
        if (n > 1 && std::abs(std::abs(preds[0]) - std::abs(preds[1])) > 1e-6) CHECK(r.rmse > r.mae);

        const double e = rng.next();
        std::vector<double> equal(n);
        for (std::size_t i = 0; i < n; ++i) equal[i] = (i % 2 ? e : -e);
        const auto q = score(equal, actuals);
        CHECK(q.rmse == doctest::Approx(q.mae).epsilon(1e-14));
    }
}

TEST_CASE("property: the prediction lies within the analogue range") {
    const auto panel = synthetic_flow_panel({}, 9);
    const auto r = backtest(panel, flow_options());
    for (const auto& f : r.sps_forecasts) {
        double lo = 1e300, hi = -1e300;
        for (const auto& a : f.analogues) {
            lo = std::min(lo, a.displacement);
            hi = std::max(hi, a.displacement);
        }
        CHECK(f.predicted_growth >= lo - 1e-15);
        CHECK(f.predicted_growth <= hi + 1e-15);
        CHECK(f.analogue_count == static_cast<int>(f.analogues.size()));
        CHECK(f.dispersion >= 0.0);
    }
}

TEST_CASE("property: identical inputs give bit-identical reports") {
    const auto a = backtest(synthetic_flow_panel({}, 42), flow_options(), naive_constant_growth(synthetic_flow_panel({}, 42)));
    const auto b = backtest(synthetic_flow_panel({}, 42), flow_options(), naive_constant_growth(synthetic_flow_panel({}, 42)));
    CHECK(to_json(a).dump() == to_json(b).dump());
    std::ostringstream ca, cb;
    write_backtest_csv(ca, a);
    write_backtest_csv(cb, b);
    CHECK(ca.str() == cb.str());
}

TEST_CASE("property: lowering the laminar threshold never makes a point laminar") {
    const auto panel = synthetic_flow_panel({}, 42);
    std::map<CountryYear, Regime> previous;
    for (double threshold : {0.3, 0.15, 0.1, 0.07, 0.05, 0.02, 0.01}) {
        SpsOptions o;
        o.laminar_threshold = threshold;
        const auto r = backtest(panel, o);
        for (const auto& f : r.sps_forecasts) {
            const auto it = previous.find({f.country, f.base_year});
            if (it != previous.end() && it->second == Regime::chaotic) CHECK(f.regime == Regime::chaotic);
            previous[{f.country, f.base_year}] = f.regime;
        }
    }
}
