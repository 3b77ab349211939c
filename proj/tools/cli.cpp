#include "cli.hpp"

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "econfit/binary_matrix.hpp"
#include "econfit/eci.hpp"
#include "econfit/error.hpp"
#include "econfit/export_table.hpp"
#include "econfit/fitness.hpp"
#include "econfit/pipeline.hpp"
#include "econfit/ranking.hpp"
#include "econfit/result_io.hpp"
#include "econfit/rng.hpp"
#include "econfit/sps.hpp"

namespace econfit::cli {

using nlohmann::json;

namespace {

std::shared_ptr<spdlog::logger> logger() {
    static auto log = [] {
        auto l = spdlog::stderr_color_st("econfit");
        l->set_pattern("[%l] %v");
        const char* env = std::getenv("FITNESS_RANK_LOG");
        l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
        return l;
    }();
    return log;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

// Input files are read once; their digests go into every artifact.
class Inputs {
public:
    const std::string& load(const std::string& path) {
        auto [it, fresh] = files_.try_emplace(path);
        if (fresh) it->second = read_file(path);
        return it->second;
    }
    json digests() const {
        json arr = json::array();
        for (const auto& [path, data] : files_) arr.push_back({{"path", path}, {"sha256", sha256_hex(data)}});
        return arr;
    }

private:
    std::map<std::string, std::string> files_;
};

// Files are staged and renamed into place only when the command succeeds.
class Outputs {
public:
    void add(const std::string& path, std::string content) {
        if (path.empty()) throw Error("missing --output");
        staged_.emplace_back(path, std::move(content));
    }
    void commit() {
        std::vector<std::string> done;
        try {
            for (const auto& [path, content] : staged_) {
                const auto tmp = path + ".tmp";
                std::ofstream out(tmp, std::ios::binary);
                if (!out) throw Error("cannot write '" + path + "'");
                out << content;
                out.close();
                if (!out) throw Error("cannot write '" + path + "'");
                std::filesystem::rename(tmp, path);
                done.push_back(path);
            }
        } catch (...) {
            for (const auto& [path, content] : staged_) std::filesystem::remove(path + ".tmp");
            for (const auto& path : done) std::filesystem::remove(path);
            throw;
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> staged_;
};

const char* to_string(Algorithm a) { return a == Algorithm::fitness ? "fitness" : "eci"; }
const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

json config_echo(const RunConfig& c) {
    json j = {{"command", to_string(c.command)},
              {"input", c.input},
              {"output", c.output},
              {"algorithm", to_string(c.algorithm)},
              {"threshold", c.threshold},
              {"horizon", c.horizon},
              {"k", c.k},
              {"laminar_threshold", c.laminar_threshold},
              {"blend", c.blend},
              {"seed", c.seed},
              {"max_iterations", c.max_iterations},
              {"tolerance", c.tolerance}};
    const auto set = [&](const char* key, const std::string& v) {
        if (!v.empty()) j[key] = v;
    };
    set("gdppc", c.gdppc);
    set("panel", c.panel);
    set("baseline", c.baseline);
    set("exogenous_complexity", c.exogenous_complexity);
    set("plane_output", c.plane_output);
    set("gdppc_output", c.gdppc_output);
    set("fixture", c.fixture);
    set("country", c.country);
    if (c.command == Command::rank && c.algorithm == Algorithm::eci) j["eci_method"] = c.eci_method;
    if (c.year) j["year"] = *c.year;
    if (c.format) j["format"] = to_string(*c.format);
    if (c.naive_baseline) j["naive_baseline"] = true;
    if (c.command == Command::synth) {
        j["countries"] = c.countries;
        j["products"] = c.products;
        j["flip_prob"] = c.flip_prob;
        j["density"] = c.density;
    }
    return j;
}

json provenance(const RunConfig& c, const Inputs& inputs, json extra = json::object()) {
    json p = {{"tool", "econfit"}, {"version", ECONFIT_VERSION}, {"config", config_echo(c)}, {"inputs", inputs.digests()}};
    if (!extra.empty()) p["artifact"] = std::move(extra);
    return p;
}

std::string csv_artifact(const json& prov, const std::string& body) {
    return "# provenance: " + prov.dump() + "\n" + body;
}

std::string json_artifact(const json& prov, json payload) {
    payload["provenance"] = prov;
    return payload.dump(2) + "\n";
}

json matrix_metadata(const BinaryMatrix& m) {
    const auto& p = m.provenance();
    json j = {{"countries", m.num_countries()},
              {"products", m.num_products()},
              {"ones", m.num_ones()},
              {"pruned_countries", p.pruned_countries},
              {"pruned_products", p.pruned_products}};
    if (p.year) j["year"] = *p.year;
    if (p.threshold) j["threshold"] = *p.threshold;
    return j;
}

FitnessOptions fitness_options(const RunConfig& c) {
    FitnessOptions o;
    o.max_iterations = c.max_iterations;
    o.tolerance = c.tolerance;
    return o;
}

SpsOptions sps_options(const RunConfig& c) {
    SpsOptions o;
    o.k = c.k;
    o.laminar_threshold = c.laminar_threshold;
    o.blend = c.blend;
    o.validate();
    return o;
}

BinaryMatrix load_matrix(const RunConfig& c, Inputs& inputs) {
    std::istringstream in(inputs.load(c.input));
    return read_matrix_csv(in);
}

ExportTable load_exports(const std::string& path, Inputs& inputs) {
    std::istringstream in(inputs.load(path));
    auto table = parse_export_table(in);
    logger()->info("read {} export records over {} years", table.records().size(), table.years().size());
    return table;
}

PanelDataset load_panel(const RunConfig& c, Inputs& inputs) {
    if (!c.panel.empty()) {
        std::istringstream in(inputs.load(c.panel));
        return read_plane_csv(in, c.horizon);
    }
    if (c.input.empty() || c.gdppc.empty()) throw Error("need --panel, or --input with --gdppc");
    const auto table = load_exports(c.input, inputs);
    std::istringstream gin(inputs.load(c.gdppc));
    const auto gdppc = read_gdppc_csv(gin);
    const auto rankings = rank_all_years(table, c.threshold, fitness_options(c));
    for (const auto& [year, r] : rankings)
        if (!r.converged) logger()->warn("fitness for {} stopped without converging ({})", year, econfit::to_string(r.stop_reason));
    return build_panel(rankings, gdppc, c.horizon);
}

void stage_plane(const RunConfig& c, const Inputs& inputs, const PanelDataset& panel, Outputs& outputs) {
    if (c.plane_output.empty()) return;
    std::ostringstream body;
    write_plane_csv(body, panel, plane_regimes(panel, sps_options(c)));
    json extra;
    try {
        const auto line = equilibrium_line(panel);
        extra["equilibrium_line"] = {{"slope", line.slope}, {"intercept", line.intercept}};
    } catch (const Error&) {
    }
    outputs.add(c.plane_output, csv_artifact(provenance(c, inputs, extra), body.str()));
}

// ---------------------------------------------------------------- commands

void cmd_ingest(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    const auto table = load_exports(c.input, inputs);
    int year = 0;
    if (c.year) {
        year = *c.year;
    } else if (table.years().size() == 1) {
        year = table.years().begin()->first;
    } else {
        throw Error("input spans several years; pass --year");
    }
    const auto r = rca(table, year);
    for (const auto& id : r.dropped_countries) logger()->warn("dropping country '{}' with zero total export", id);
    for (const auto& id : r.dropped_products) logger()->warn("dropping product '{}' with zero world export", id);
    const auto m = binarize(r, c.threshold);
    if (!m.provenance().pruned_countries.empty() || !m.provenance().pruned_products.empty())
        logger()->info("pruned {} countries and {} products without entries above threshold",
                       m.provenance().pruned_countries.size(), m.provenance().pruned_products.size());

    auto meta = matrix_metadata(m);
    meta["dropped_countries"] = r.dropped_countries;
    meta["dropped_products"] = r.dropped_products;
    std::ostringstream body;
    write_matrix_csv(body, m);
    outputs.add(c.output, csv_artifact(provenance(c, inputs, meta), body.str()));
}

std::vector<double> load_exogenous(const BinaryMatrix& m, const std::string& path, Inputs& inputs) {
    std::istringstream in(inputs.load(path));
    std::string line;
    bool header = false;
    std::map<std::string, double> values;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "product,complexity") throw ParseError(line_no, "expected header 'product,complexity'");
            header = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(line_no, "expected 2 fields");
        try {
            std::size_t used = 0;
            const auto text = line.substr(comma + 1);
            values[line.substr(0, comma)] = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
            throw ParseError(line_no, "invalid complexity");
        }
    }
    std::vector<double> q;
    for (const auto& p : m.products()) {
        const auto it = values.find(p);
        if (it == values.end()) throw Error("no exogenous complexity for product '" + p + "'");
        q.push_back(it->second);
    }
    return q;
}

void cmd_rank(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    const auto m = load_matrix(c, inputs);
    const auto format = c.format.value_or(Format::csv);
    std::ostringstream body;
    json payload, meta;

    if (c.algorithm == Algorithm::fitness) {
        const auto r = fitness_fixed_point(m, fitness_options(c));
        if (!r.converged) logger()->warn("fitness stopped without converging ({})", econfit::to_string(r.stop_reason));
        write_ranking_csv(body, r);
        meta = ranking_metadata(r);
        payload = to_json(r);
    } else if (!c.exogenous_complexity.empty()) {
        // One averaging step against given product complexities.
        const auto k = eci_country_step(m, load_exogenous(m, c.exogenous_complexity, inputs));
        const auto ranks = rank_descending(k, m.countries());
        body << "entity,kind,value,rank\n";
        json rows = json::array();
        for (std::size_t i = 0; i < k.size(); ++i) {
            body << csv::escape(m.countries()[i]) << ",eci," << csv::format_double(k[i]) << ',' << ranks[i] << '\n';
            rows.push_back({{"id", m.countries()[i]}, {"value", k[i]}, {"rank", ranks[i]}});
        }
        meta = {{"algorithm", "eci"}, {"mode", "exogenous_step"}};
        payload = meta;
        payload["eci"] = rows;
    } else {
        EciResult r;
        if (c.eci_method == "spectral") r = eci_spectral(m);
        else if (c.eci_method == "iterate") r = eci_fixed_point(m, fitness_options(c));
        else throw Error("unknown --eci-method '" + c.eci_method + "'");
        if (!r.converged) logger()->warn("eci iteration stopped without converging");
        write_ranking_csv(body, r);
        meta = ranking_metadata(r);
        payload = to_json(r);
    }

    meta["matrix"] = matrix_metadata(m);
    if (format == Format::csv) {
        const auto prov = provenance(c, inputs);
        outputs.add(c.output, csv_artifact(prov, body.str()));
        outputs.add(c.output + ".json", json_artifact(prov, meta));
    } else {
        payload["matrix"] = meta["matrix"];
        outputs.add(c.output, json_artifact(provenance(c, inputs), payload));
    }
}

void cmd_spectroscopy(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    if (c.country.empty()) throw Error("spectroscopy needs --country");
    const auto m = load_matrix(c, inputs);
    std::vector<SpectroscopyBar> bars;
    if (c.algorithm == Algorithm::fitness) {
        bars = spectroscopy(m, fitness_fixed_point(m, fitness_options(c)), c.country);
    } else {
        const auto r = c.eci_method == "spectral" ? eci_spectral(m) : eci_fixed_point(m, fitness_options(c));
        bars = spectroscopy(m, r.pci, c.country);
    }
    if (c.format.value_or(Format::csv) == Format::csv) {
        std::ostringstream body;
        write_spectroscopy_csv(body, bars);
        outputs.add(c.output, csv_artifact(provenance(c, inputs), body.str()));
    } else {
        json rows = json::array();
        for (const auto& b : bars) rows.push_back({{"product", b.product}, {"complexity", b.complexity}, {"rank", b.rank}});
        outputs.add(c.output, json_artifact(provenance(c, inputs), {{"country", c.country}, {"bars", rows}}));
    }
}

void cmd_forecast(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    const auto panel = load_panel(c, inputs);
    const auto opts = sps_options(c);
    std::vector<PanelPoint> queries;
    if (!c.country.empty()) {
        int year = c.year.value_or(0);
        if (!c.year) {
            for (const auto& pt : panel.points())
                if (pt.country == c.country) year = std::max(year, pt.year);
        }
        const auto pt = panel.point(c.country, year);
        if (!pt) throw Error("no panel point for " + c.country + "@" + std::to_string(year));
        queries.push_back(*pt);
    } else {
        const int year = c.year.value_or(panel.last_year());
        for (const auto& pt : panel.points())
            if (pt.year == year) queries.push_back(pt);
        if (queries.empty()) throw Error("no panel points in year " + std::to_string(year));
    }

    std::vector<Forecast> sps, trend;
    for (const auto& q : queries) {
        try {
            sps.push_back(forecast_sps(panel, q, q.year, opts));
            trend.push_back(forecast_sps_trend(panel, q, q.year, opts));
        } catch (const Error& e) {
            if (queries.size() == 1) throw;
            logger()->warn("skipping {}@{}: {}", q.country, q.year, e.what());
        }
    }
    if (sps.empty()) throw Error("no forecasts could be made");

    if (c.format.value_or(Format::csv) == Format::csv) {
        std::ostringstream body;
        write_forecasts_csv(body, sps, trend);
        outputs.add(c.output, csv_artifact(provenance(c, inputs), body.str()));
    } else {
        json a = json::array(), b = json::array();
        for (const auto& f : sps) a.push_back(to_json(f));
        for (const auto& f : trend) b.push_back(to_json(f));
        outputs.add(c.output, json_artifact(provenance(c, inputs), {{"sps", a}, {"sps_trend", b}}));
    }
    stage_plane(c, inputs, panel, outputs);
}

void cmd_backtest(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    const auto panel = load_panel(c, inputs);
    std::optional<CountryYearTable> baseline;
    if (!c.baseline.empty()) {
        std::istringstream in(inputs.load(c.baseline));
        baseline = read_baseline_csv(in);
    } else if (c.naive_baseline) {
        baseline = naive_constant_growth(panel);
    }
    const auto result = backtest(panel, sps_options(c), baseline);
    logger()->info("backtest scored {} forecasts", result.sps.n);

    if (c.format.value_or(Format::json) == Format::csv) {
        std::ostringstream body;
        write_backtest_csv(body, result);
        outputs.add(c.output, csv_artifact(provenance(c, inputs), body.str()));
    } else {
        json payload = to_json(result);
        if (baseline) payload["baseline_source"] = c.baseline.empty() ? "naive_constant_growth" : "file";
        outputs.add(c.output, json_artifact(provenance(c, inputs), payload));
    }
    stage_plane(c, inputs, panel, outputs);
}

// Demo trade data: latent capability per country, difficulty per product.
// Countries export products below their capability; GDP tracks capability.
void synth_exports(const RunConfig& c, const Inputs& inputs, Outputs& outputs) {
    if (c.gdppc_output.empty()) throw Error("synth --fixture exports needs --gdppc-output");
    if (c.countries < 2 || c.products < 2) throw Error("need at least 2 countries and 2 products");
    UniformStream stream(c.seed);
    const int first_year = 2000, years = 16;
    std::vector<double> capability(c.countries), speed(c.countries), difficulty(c.products);
    for (auto& v : capability) v = stream.next();
    for (auto& v : speed) v = 0.02 * stream.next();
    for (auto& v : difficulty) v = stream.next();
    std::ostringstream ex, gdp;
    ex << "country,product,year,value\n";
    gdp << "country,year,gdppc\n";
    std::vector<double> log_gdp(c.countries);
    for (auto& v : log_gdp) v = 7.0 + 2.0 * stream.next();
    for (int t = 0; t < years; ++t) {
        const int year = first_year + t;
        for (int ci = 0; ci < c.countries; ++ci) {
            const double cap = capability[ci] + speed[ci] * t;
            const auto cname = "C" + std::to_string(ci + 1);
            for (int pi = 0; pi < c.products; ++pi) {
                const double gap = cap - difficulty[pi];
                const double value = gap > -0.05 ? std::exp(3.0 * gap) * (0.5 + stream.next()) * 100.0 : 0.0;
                if (value > 0.0) ex << cname << ",P" << (pi + 1) << ',' << year << ',' << json(value).dump() << '\n';
            }
            auto& level = log_gdp[ci];
            level += 0.01 + 0.04 * (cap - 0.25 * (level - 7.0)) + 0.02 * standard_normal(stream);
            gdp << cname << ',' << year << ',' << json(std::exp(level)).dump() << '\n';
        }
    }
    outputs.add(c.output, csv_artifact(provenance(c, inputs), ex.str()));
    outputs.add(c.gdppc_output, csv_artifact(provenance(c, inputs), gdp.str()));
}

void cmd_synth(const RunConfig& c, Inputs& inputs, Outputs& outputs) {
    const auto& f = c.fixture;
    std::ostringstream body;
    if (f == "fig1" || f == "nested" || f == "noisy-nested" || f == "random") {
        BinaryMatrix m = f == "fig1"           ? fig1_fixture()
                         : f == "nested"       ? generate_nested(c.countries, c.products)
                         : f == "noisy-nested" ? generate_noisy_nested(c.countries, c.products, c.flip_prob, c.seed)
                                               : generate_random(c.countries, c.products, c.density, c.seed);
        write_matrix_csv(body, m);
        outputs.add(c.output, csv_artifact(provenance(c, inputs, matrix_metadata(m)), body.str()));
    } else if (f == "fig1-complexity") {
        const auto m = fig1_fixture();
        const auto q = fig1_complexities();
        body << "product,complexity\n";
        for (std::size_t p = 0; p < q.size(); ++p) body << m.products()[p] << ',' << json(q[p]).dump() << '\n';
        outputs.add(c.output, csv_artifact(provenance(c, inputs), body.str()));
    } else if (f == "flow-panel") {
        FlowPanelSpec spec;
        spec.horizon = c.horizon;
        const auto panel = synthetic_flow_panel(spec, c.seed);
        write_plane_csv(body, panel, {});
        outputs.add(c.output, csv_artifact(provenance(c, inputs), body.str()));
    } else if (f == "exports") {
        synth_exports(c, inputs, outputs);
    } else {
        throw Error("unknown fixture '" + f + "'");
    }
}

} // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::ingest: return "ingest";
        case Command::rank: return "rank";
        case Command::spectroscopy: return "spectroscopy";
        case Command::forecast: return "forecast";
        case Command::backtest: return "backtest";
        case Command::synth: return "synth";
    }
    return "unknown";
}

int run(const RunConfig& config, std::ostream& err) {
    Inputs inputs;
    Outputs outputs;
    try {
        switch (config.command) {
            case Command::ingest: cmd_ingest(config, inputs, outputs); break;
            case Command::rank: cmd_rank(config, inputs, outputs); break;
            case Command::spectroscopy: cmd_spectroscopy(config, inputs, outputs); break;
            case Command::forecast: cmd_forecast(config, inputs, outputs); break;
            case Command::backtest: cmd_backtest(config, inputs, outputs); break;
            case Command::synth: cmd_synth(config, inputs, outputs); break;
        }
        outputs.commit();
        return 0;
    } catch (const std::exception& e) {
        err << json{{"status", "error"}, {"command", to_string(config.command)}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Country Fitness / product Complexity rankings and growth forecasting", "econfit"};
    app.require_subcommand(1);
    RunConfig c;
    std::string algorithm = "fitness", format;
    int year = 0;
    std::uint64_t seed = 0;

    const auto common_rank = [&](CLI::App* s) {
        s->add_option("--algorithm", algorithm, "fitness | eci")->check(CLI::IsMember({"fitness", "eci"}));
        s->add_option("--eci-method", c.eci_method, "iterate | spectral")->check(CLI::IsMember({"iterate", "spectral"}));
        s->add_option("--max-iterations", c.max_iterations)->check(CLI::PositiveNumber);
        s->add_option("--tolerance", c.tolerance)->check(CLI::PositiveNumber);
    };
    const auto common_sps = [&](CLI::App* s) {
        s->add_option("--input", c.input, "export CSV (with --gdppc)")->check(CLI::ExistingFile);
        s->add_option("--gdppc", c.gdppc, "country,year,gdppc CSV")->check(CLI::ExistingFile);
        s->add_option("--panel", c.panel, "plane CSV instead of exports")->check(CLI::ExistingFile);
        s->add_option("--threshold", c.threshold)->check(CLI::PositiveNumber);
        s->add_option("--horizon", c.horizon)->check(CLI::PositiveNumber);
        s->add_option("--k", c.k)->check(CLI::PositiveNumber);
        s->add_option("--laminar-threshold", c.laminar_threshold)->check(CLI::PositiveNumber);
        s->add_option("--blend", c.blend)->check(CLI::Range(0.0, 1.0));
        s->add_option("--plane-output", c.plane_output, "also write the (log fitness, log GDPpc) plane");
        s->add_option("--max-iterations", c.max_iterations)->check(CLI::PositiveNumber);
        s->add_option("--tolerance", c.tolerance)->check(CLI::PositiveNumber);
    };
    const auto out_opts = [&](CLI::App* s) {
        s->add_option("--output", c.output)->required();
        s->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    };

    auto* ingest = app.add_subcommand("ingest", "export CSV -> binary matrix CSV");
    ingest->add_option("--input", c.input)->required()->check(CLI::ExistingFile);
    ingest->add_option("--year", year);
    ingest->add_option("--threshold", c.threshold)->check(CLI::PositiveNumber);
    out_opts(ingest);

    auto* rank = app.add_subcommand("rank", "binary matrix -> Fitness/Complexity or ECI/PCI");
    rank->add_option("--input", c.input)->required()->check(CLI::ExistingFile);
    rank->add_option("--exogenous-complexity", c.exogenous_complexity, "product,complexity CSV (eci single step)")
        ->check(CLI::ExistingFile);
    common_rank(rank);
    out_opts(rank);

    auto* spec = app.add_subcommand("spectroscopy", "per-country products ordered by complexity");
    spec->add_option("--input", c.input)->required()->check(CLI::ExistingFile);
    spec->add_option("--country", c.country)->required();
    common_rank(spec);
    out_opts(spec);

    auto* forecast = app.add_subcommand("forecast", "analogue growth forecasts");
    common_sps(forecast);
    forecast->add_option("--country", c.country);
    forecast->add_option("--year", year);
    out_opts(forecast);

    auto* back = app.add_subcommand("backtest", "out-of-sample MAE/RMSE evaluation");
    common_sps(back);
    back->add_option("--baseline", c.baseline, "country,base_year,predicted_growth CSV")->check(CLI::ExistingFile);
    back->add_flag("--naive-baseline", c.naive_baseline, "score a constant-growth baseline");
    out_opts(back);

    auto* synth = app.add_subcommand("synth", "write generator fixtures");
    synth->add_option("--fixture", c.fixture, "fig1 | fig1-complexity | nested | noisy-nested | random | flow-panel | exports")
        ->required();
    synth->add_option("--countries", c.countries)->check(CLI::PositiveNumber);
    synth->add_option("--products", c.products)->check(CLI::PositiveNumber);
    synth->add_option("--flip-prob", c.flip_prob);
    synth->add_option("--density", c.density);
    synth->add_option("--horizon", c.horizon)->check(CLI::PositiveNumber);
    synth->add_option("--gdppc-output", c.gdppc_output);
    out_opts(synth);

    for (auto* s : {ingest, rank, spec, forecast, back, synth}) s->add_option("--seed", seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Error(e.what());
    }

    const std::pair<CLI::App*, Command> commands[] = {{ingest, Command::ingest},     {rank, Command::rank},
                                                      {spec, Command::spectroscopy}, {forecast, Command::forecast},
                                                      {back, Command::backtest},     {synth, Command::synth}};
    for (const auto& [sub, cmd] : commands) {
        if (!sub->parsed()) continue;
        c.command = cmd;
        if (const auto* opt = sub->get_option_no_throw("--year"); opt && opt->count()) c.year = year;
    }
    c.algorithm = algorithm == "eci" ? Algorithm::eci : Algorithm::fitness;
    if (!format.empty()) c.format = format == "json" ? Format::json : Format::csv;
    c.seed = seed;
    return c;
}

int main_entry(const std::vector<std::string>& args, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_args(args);
    } catch (const std::exception& e) {
        err << json{{"status", "error"}, {"command", "parse"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
    if (!config) return 0;
    return run(*config, err);
}

} // namespace econfit::cli
