#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "econfit/binary_matrix.hpp"
#include "econfit/eci.hpp"
#include "econfit/error.hpp"
#include "econfit/export_table.hpp"
#include "econfit/fitness.hpp"
#include "econfit/pipeline.hpp"
#include "econfit/sps.hpp"

namespace py = pybind11;
using namespace econfit;

namespace {

BinaryMatrix matrix_from_rows(std::vector<std::string> countries, std::vector<std::string> products,
                              const std::vector<std::vector<int>>& rows) {
    if (rows.size() != countries.size()) throw Error("one row per country expected");
    std::vector<std::uint8_t> cells;
    for (const auto& row : rows) {
        if (row.size() != products.size()) throw Error("one cell per product expected");
        for (int v : row) {
            if (v != 0 && v != 1) throw Error("matrix cells must be 0 or 1");
            cells.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return BinaryMatrix(std::move(countries), std::move(products), std::move(cells));
}

std::vector<std::vector<int>> rows_of(const BinaryMatrix& m) {
    std::vector<std::vector<int>> rows(m.num_countries(), std::vector<int>(m.num_products(), 0));
    for (std::size_t c = 0; c < m.num_countries(); ++c)
        for (auto p : m.products_of(c)) rows[c][p] = 1;
    return rows;
}

FitnessOptions options(int max_iterations, double tolerance, int window) {
    FitnessOptions o;
    o.max_iterations = max_iterations;
    o.tolerance = tolerance;
    o.rank_stability_window = window;
    return o;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fitness/Complexity and ECI rankings, analogue growth forecasts";
    py::register_exception<Error>(m, "EconfitError", PyExc_ValueError);

    py::class_<BinaryMatrix>(m, "BinaryMatrix")
        .def(py::init(&matrix_from_rows), py::arg("countries"), py::arg("products"), py::arg("rows"))
        .def_property_readonly("countries", &BinaryMatrix::countries)
        .def_property_readonly("products", &BinaryMatrix::products)
        .def_property_readonly("shape", [](const BinaryMatrix& b) { return py::make_tuple(b.num_countries(), b.num_products()); })
        .def_property_readonly("pruned_countries", [](const BinaryMatrix& b) { return b.provenance().pruned_countries; })
        .def_property_readonly("pruned_products", [](const BinaryMatrix& b) { return b.provenance().pruned_products; })
        .def("rows", &rows_of)
        .def("connected", &BinaryMatrix::connected)
        .def("to_csv", [](const BinaryMatrix& b) {
            std::ostringstream out;
            write_matrix_csv(out, b);
            return out.str();
        })
        .def_static("from_csv", [](const std::string& text) {
            std::istringstream in(text);
            return read_matrix_csv(in);
        })
        .def("__eq__", [](const BinaryMatrix& a, const BinaryMatrix& b) { return a == b; })
        .def("__repr__", [](const BinaryMatrix& b) {
            return "<BinaryMatrix " + std::to_string(b.num_countries()) + "x" + std::to_string(b.num_products()) + ">";
        });

    m.def("diversification", &diversification);
    m.def("ubiquity", &ubiquity);
    m.def("fig1_fixture", &fig1_fixture);
    m.def("fig1_complexities", &fig1_complexities);
    m.def("generate_nested", &generate_nested, py::arg("countries"), py::arg("products"));
    m.def("generate_noisy_nested", &generate_noisy_nested, py::arg("countries"), py::arg("products"),
          py::arg("flip_prob"), py::arg("seed"));
    m.def("generate_random", &generate_random, py::arg("countries"), py::arg("products"), py::arg("density"),
          py::arg("seed"));

    m.def(
        "matrix_from_exports",
        [](const std::string& csv_text, int year, double threshold) {
            std::istringstream in(csv_text);
            return binarize(rca(parse_export_table(in), year), threshold);
        },
        py::arg("csv_text"), py::arg("year"), py::arg("threshold") = 1.0,
        "Parse `country,product,year,value` CSV text, compute Balassa RCA for one year and binarize.");

    py::enum_<StopReason>(m, "StopReason")
        .value("value_tolerance", StopReason::value_tolerance)
        .value("rank_stability", StopReason::rank_stability)
        .value("max_iterations", StopReason::max_iterations)
        .value("underflow", StopReason::underflow);

    py::class_<RankingResult>(m, "RankingResult")
        .def_readonly("countries", &RankingResult::countries)
        .def_readonly("products", &RankingResult::products)
        .def_readonly("fitness", &RankingResult::fitness)
        .def_readonly("complexity", &RankingResult::complexity)
        .def_readonly("country_rank", &RankingResult::country_rank)
        .def_readonly("product_rank", &RankingResult::product_rank)
        .def_readonly("iterations_used", &RankingResult::iterations_used)
        .def_readonly("converged", &RankingResult::converged)
        .def_readonly("stop_reason", &RankingResult::stop_reason)
        .def_readonly("trace", &RankingResult::trace)
        .def("fitness_of", &RankingResult::fitness_of)
        .def("complexity_of", &RankingResult::complexity_of);

    m.def("fitness_step", [](const BinaryMatrix& b, std::vector<double> q) { return fitness_step(b, q); });
    m.def("complexity_step", [](const BinaryMatrix& b, std::vector<double> f) { return complexity_step(b, f); });
    m.def(
        "fitness",
        [](const BinaryMatrix& b, int max_iterations, double tolerance, int window) {
            return fitness_fixed_point(b, options(max_iterations, tolerance, window));
        },
        py::arg("matrix"), py::arg("max_iterations") = 1000, py::arg("tolerance") = 1e-10,
        py::arg("rank_stability_window") = 10);
    m.def(
        "spectroscopy",
        [](const BinaryMatrix& b, const RankingResult& r, const std::string& country) {
            py::list out;
            for (const auto& bar : spectroscopy(b, r, country)) out.append(py::make_tuple(bar.product, bar.complexity, bar.rank));
            return out;
        },
        py::arg("matrix"), py::arg("result"), py::arg("country"));

    py::class_<EciResult>(m, "EciResult")
        .def_readonly("countries", &EciResult::countries)
        .def_readonly("products", &EciResult::products)
        .def_readonly("eci", &EciResult::eci)
        .def_readonly("pci", &EciResult::pci)
        .def_readonly("country_rank", &EciResult::country_rank)
        .def_readonly("product_rank", &EciResult::product_rank)
        .def_readonly("iterations_used", &EciResult::iterations_used)
        .def_readonly("converged", &EciResult::converged)
        .def_readonly("eigenvalue", &EciResult::eigenvalue);

    m.def("eci_country_step", [](const BinaryMatrix& b, std::vector<double> q) { return eci_country_step(b, q); });
    m.def("eci_product_step", [](const BinaryMatrix& b, std::vector<double> f) { return eci_product_step(b, f); });
    m.def(
        "eci",
        [](const BinaryMatrix& b, int max_iterations, double tolerance) {
            return eci_fixed_point(b, options(max_iterations, tolerance, 10));
        },
        py::arg("matrix"), py::arg("max_iterations") = 1000, py::arg("tolerance") = 1e-10);
    m.def("eci_spectral", &eci_spectral, py::arg("matrix"));

    py::enum_<Regime>(m, "Regime").value("laminar", Regime::laminar).value("chaotic", Regime::chaotic);

    py::class_<PanelPoint>(m, "PanelPoint")
        .def(py::init([](std::string c, int y, double x, double g) { return PanelPoint{std::move(c), y, x, g}; }),
             py::arg("country"), py::arg("year"), py::arg("log_fitness"), py::arg("log_gdppc"))
        .def_readonly("country", &PanelPoint::country)
        .def_readonly("year", &PanelPoint::year)
        .def_readonly("log_fitness", &PanelPoint::log_fitness)
        .def_readonly("log_gdppc", &PanelPoint::log_gdppc);

    py::class_<PanelDataset>(m, "PanelDataset")
        .def(py::init<std::vector<PanelPoint>, int>(), py::arg("points"), py::arg("horizon") = 5)
        .def_property_readonly("points", &PanelDataset::points)
        .def_property_readonly("horizon", &PanelDataset::horizon)
        .def_property_readonly("displacements", &PanelDataset::displacements)
        .def("displacement", &PanelDataset::displacement);

    m.def(
        "synthetic_flow_panel",
        [](std::uint64_t seed, int laminar, int chaotic, int years, int horizon) {
            FlowPanelSpec spec;
            spec.laminar_countries = laminar;
            spec.chaotic_countries = chaotic;
            spec.years = years;
            spec.horizon = horizon;
            return synthetic_flow_panel(spec, seed);
        },
        py::arg("seed"), py::arg("laminar_countries") = 20, py::arg("chaotic_countries") = 20, py::arg("years") = 26,
        py::arg("horizon") = 5);

    py::class_<SpsOptions>(m, "SpsOptions")
        .def(py::init([](int k, double laminar_threshold, double blend) { return SpsOptions{k, laminar_threshold, blend}; }),
             py::arg("k") = 20, py::arg("laminar_threshold") = 0.1, py::arg("blend") = 0.5)
        .def_readwrite("k", &SpsOptions::k)
        .def_readwrite("laminar_threshold", &SpsOptions::laminar_threshold)
        .def_readwrite("blend", &SpsOptions::blend);

    py::class_<Forecast>(m, "Forecast")
        .def_readonly("country", &Forecast::country)
        .def_readonly("base_year", &Forecast::base_year)
        .def_readonly("predicted_growth", &Forecast::predicted_growth)
        .def_readonly("analogue_count", &Forecast::analogue_count)
        .def_readonly("dispersion", &Forecast::dispersion)
        .def_readonly("regime", &Forecast::regime)
        .def_readonly("truncated", &Forecast::truncated)
        .def_readonly("trend_fallback", &Forecast::trend_fallback)
        .def_property_readonly("analogues", [](const Forecast& f) {
            py::list out;
            for (const auto& a : f.analogues) out.append(py::make_tuple(a.point.country, a.point.year, a.end_year(), a.displacement));
            return out;
        });

    m.def("forecast_sps", &forecast_sps, py::arg("panel"), py::arg("query"), py::arg("cutoff_year"),
          py::arg("options") = SpsOptions{});
    m.def("forecast_sps_trend", &forecast_sps_trend, py::arg("panel"), py::arg("query"), py::arg("cutoff_year"),
          py::arg("options") = SpsOptions{});

    py::class_<ErrorStats>(m, "ErrorStats")
        .def_readonly("mae", &ErrorStats::mae)
        .def_readonly("rmse", &ErrorStats::rmse)
        .def_readonly("n", &ErrorStats::n);

    py::class_<EvaluationReport>(m, "EvaluationReport")
        .def_readonly("mae", &EvaluationReport::mae)
        .def_readonly("rmse", &EvaluationReport::rmse)
        .def_readonly("ci_mae", &EvaluationReport::ci_mae)
        .def_readonly("ci_rmse", &EvaluationReport::ci_rmse)
        .def_readonly("n", &EvaluationReport::n)
        .def_readonly("per_regime", &EvaluationReport::per_regime);

    m.def(
        "evaluate",
        [](const std::vector<double>& predictions, const std::vector<double>& actuals) {
            if (predictions.size() != actuals.size()) throw Error("predictions and actuals differ in length");
            std::vector<Forecast> fs;
            CountryYearTable table;
            for (std::size_t i = 0; i < predictions.size(); ++i) {
                Forecast f;
                f.country = std::to_string(i);
                f.predicted_growth = predictions[i];
                fs.push_back(f);
                table[{f.country, 0}] = actuals[i];
            }
            return evaluate(fs, table);
        },
        py::arg("predictions"), py::arg("actuals"));

    py::class_<BacktestResult>(m, "BacktestResult")
        .def_readonly("sps", &BacktestResult::sps)
        .def_readonly("sps_trend", &BacktestResult::sps_trend)
        .def_readonly("baseline", &BacktestResult::baseline)
        .def_readonly("sps_forecasts", &BacktestResult::sps_forecasts)
        .def_readonly("trend_forecasts", &BacktestResult::trend_forecasts);

    m.def(
        "backtest",
        [](const PanelDataset& panel, const SpsOptions& opts, std::optional<CountryYearTable> baseline, bool naive) {
            if (naive && baseline) throw Error("pass either a baseline or naive=True");
            if (naive) baseline = naive_constant_growth(panel);
            return backtest(panel, opts, baseline);
        },
        py::arg("panel"), py::arg("options") = SpsOptions{}, py::arg("baseline") = std::nullopt, py::arg("naive") = false);
    m.def("naive_constant_growth", &naive_constant_growth, py::arg("panel"));

    m.attr("__version__") = ECONFIT_VERSION;
}
