#include "econfit/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "econfit/error.hpp"
#include "econfit/ranking.hpp"

namespace econfit {

namespace {

void require_positive(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!(x > 0.0) || !std::isfinite(x)) throw Error(std::string(what) + " must be strictly positive and finite");
}

bool all_positive_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Smallest value we let an iterate reach. Below it 1/F overflows once summed
// over a few countries.
constexpr double kFloor = 1e-280;

} // namespace

void FitnessOptions::validate() const {
    if (max_iterations < 1) throw Error("max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw Error("tolerance must be > 0");
    if (rank_stability_window < 1) throw Error("rank_stability_window must be >= 1");
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::value_tolerance: return "value_tolerance";
        case StopReason::rank_stability: return "rank_stability";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::underflow: return "underflow";
    }
    return "unknown";
}

double RankingResult::fitness_of(const std::string& country) const {
    const auto it = std::find(countries.begin(), countries.end(), country);
    if (it == countries.end()) throw Error("unknown country '" + country + "'");
    return fitness[static_cast<std::size_t>(it - countries.begin())];
}

double RankingResult::complexity_of(const std::string& product) const {
    const auto it = std::find(products.begin(), products.end(), product);
    if (it == products.end()) throw Error("unknown product '" + product + "'");
    return complexity[static_cast<std::size_t>(it - products.begin())];
}

std::vector<double> fitness_step(const BinaryMatrix& m, std::span<const double> complexity) {
    if (complexity.size() != m.num_products()) throw Error("complexity vector has wrong length");
    require_positive(complexity, "complexity");
    std::vector<double> f(m.num_countries(), 0.0);
    for (std::size_t c = 0; c < f.size(); ++c)
        for (auto p : m.products_of(c)) f[c] += complexity[p];
    return f;
}

std::vector<double> complexity_step(const BinaryMatrix& m, std::span<const double> fitness) {
    if (fitness.size() != m.num_countries()) throw Error("fitness vector has wrong length");
    require_positive(fitness, "fitness");
    std::vector<double> q(m.num_products(), 0.0);
    for (std::size_t p = 0; p < q.size(); ++p) {
        double inverse_sum = 0.0;
        for (auto c : m.makers_of(p)) inverse_sum += 1.0 / fitness[c];
        q[p] = 1.0 / inverse_sum;
    }
    return q;
}

std::vector<double> normalize_mean(std::span<const double> v) {
    if (v.empty()) throw Error("cannot normalize an empty vector");
    require_positive(v, "normalized vector");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [mean](double x) { return x / mean; });
    return out;
}

RankingResult fitness_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts) {
    const std::vector<double> f0(m.num_countries(), 1.0), q0(m.num_products(), 1.0);
    return fitness_fixed_point(m, opts, f0, q0);
}

RankingResult fitness_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts,
                                  std::span<const double> initial_fitness,
                                  std::span<const double> initial_complexity) {
    opts.validate();
    if (initial_fitness.size() != m.num_countries() || initial_complexity.size() != m.num_products())
        throw Error("initial vectors have wrong length");

    RankingResult r;
    r.countries = m.countries();
    r.products = m.products();
    r.fitness = normalize_mean(initial_fitness);
    r.complexity = normalize_mean(initial_complexity);

    std::vector<int> prev_country_rank, prev_product_rank;
    int stable_for = 0;
    r.stop_reason = StopReason::max_iterations;

    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto f = normalize_mean(fitness_step(m, r.complexity));
        auto q = normalize_mean(complexity_step(m, r.fitness));

        const bool usable = all_positive_finite(f) && all_positive_finite(q) &&
                            *std::min_element(f.begin(), f.end()) > kFloor &&
                            *std::min_element(q.begin(), q.end()) > kFloor;
        if (!usable) {
            r.stop_reason = StopReason::underflow;
            break;
        }

        const double step = std::max(linf_distance(f, r.fitness), linf_distance(q, r.complexity));
        r.fitness = std::move(f);
        r.complexity = std::move(q);
        r.trace.push_back(step);
        r.iterations_used = it;

        if (step < opts.tolerance) {
            r.stop_reason = StopReason::value_tolerance;
            break;
        }

        auto country_rank = rank_descending(r.fitness, r.countries);
        auto product_rank = rank_descending(r.complexity, r.products);
        if (country_rank == prev_country_rank && product_rank == prev_product_rank) {
            if (++stable_for >= opts.rank_stability_window) {
                r.stop_reason = StopReason::rank_stability;
                break;
            }
        } else {
            stable_for = 0;
        }
        prev_country_rank = std::move(country_rank);
        prev_product_rank = std::move(product_rank);
    }

    r.converged = r.stop_reason == StopReason::value_tolerance || r.stop_reason == StopReason::rank_stability;
    r.country_rank = rank_descending(r.fitness, r.countries);
    r.product_rank = rank_descending(r.complexity, r.products);
    return r;
}

std::vector<SpectroscopyBar> spectroscopy(const BinaryMatrix& m, const RankingResult& r, const std::string& country) {
    if (r.products != m.products()) throw Error("ranking result does not belong to this matrix");
    return spectroscopy(m, r.complexity, country);
}

std::vector<SpectroscopyBar> spectroscopy(const BinaryMatrix& m, std::span<const double> product_scores,
                                          const std::string& country) {
    if (product_scores.size() != m.num_products()) throw Error("product score vector has wrong length");
    const auto c = m.country_index(country);
    if (!c) throw Error("unknown country '" + country + "'");
    const auto ranks = rank_descending(product_scores, m.products());
    std::vector<SpectroscopyBar> bars;
    for (auto p : m.products_of(*c)) bars.push_back({m.products()[p], product_scores[p], ranks[p]});
    std::sort(bars.begin(), bars.end(), [](const SpectroscopyBar& a, const SpectroscopyBar& b) {
        if (a.complexity != b.complexity) return a.complexity < b.complexity;
        return a.product < b.product;
    });
    return bars;
}

} // namespace econfit
