#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace econfit::cli {

enum class Command { ingest, rank, spectroscopy, forecast, backtest, synth };
enum class Algorithm { fitness, eci };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::rank;
    std::string input;
    std::string output;
    std::string gdppc;                  // forecast/backtest with --input
    std::string panel;                  // forecast/backtest from a plane CSV
    std::string baseline;               // backtest external forecasts
    std::string exogenous_complexity;   // rank --algorithm eci, single averaging step
    std::string plane_output;           // forecast/backtest plane export
    std::string gdppc_output;           // synth --fixture exports
    std::string fixture;                // synth
    std::string country;
    std::optional<int> year;
    Algorithm algorithm = Algorithm::fitness;
    std::string eci_method = "iterate"; // iterate | spectral
    double threshold = 1.0;
    int horizon = 5;
    int k = 20;
    double laminar_threshold = 0.1;
    double blend = 0.5;
    bool naive_baseline = false;
    int max_iterations = 1000;
    double tolerance = 1e-10;
    int countries = 10;
    int products = 20;
    double flip_prob = 0.0;
    double density = 0.3;
    std::uint64_t seed = 0;
    std::optional<Format> format;
};

/// Parses argv into a config. Returns std::nullopt after printing help.
/// Throws econfit::Error on invalid arguments.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args);

/// Executes one command. Returns the process exit status; on failure a
/// single JSON line is written to `err` and no output file is left behind.
int run(const RunConfig& config, std::ostream& err);

/// parse_args + run, with argument errors reported the same way.
int main_entry(const std::vector<std::string>& args, std::ostream& err);

const char* to_string(Command c);

} // namespace econfit::cli
