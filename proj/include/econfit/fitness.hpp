#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "econfit/binary_matrix.hpp"

namespace econfit {

struct FitnessOptions {
    int max_iterations = 1000;
    /// Bound on the L-infinity change of both mean-normalized vectors.
    double tolerance = 1e-10;
    /// Stop once the joint country+product ranking has not changed for this
    /// many consecutive iterations.
    int rank_stability_window = 10;

    void validate() const;
};

enum class StopReason { value_tolerance, rank_stability, max_iterations, underflow };

const char* to_string(StopReason reason);

/// Converged Fitness/Complexity, aligned with the matrix's identifier order.
struct RankingResult {
    std::vector<std::string> countries;
    std::vector<std::string> products;
    std::vector<double> fitness;    // mean 1
    std::vector<double> complexity; // mean 1
    std::vector<int> country_rank;  // 1 = highest fitness
    std::vector<int> product_rank;  // 1 = highest complexity
    int iterations_used = 0;
    bool converged = false;
    StopReason stop_reason = StopReason::max_iterations;
    std::vector<double> trace; // per-iteration max(L-inf step of F, L-inf step of Q)

    double fitness_of(const std::string& country) const;
    double complexity_of(const std::string& product) const;
};

/// F~_c = sum_p M_cp Q_p.
std::vector<double> fitness_step(const BinaryMatrix& m, std::span<const double> complexity);

/// Q~_p = 1 / sum_c (M_cp / F_c).
std::vector<double> complexity_step(const BinaryMatrix& m, std::span<const double> fitness);

/// v / mean(v); every entry must be strictly positive.
std::vector<double> normalize_mean(std::span<const double> v);

/**
 * Nonlinear Fitness/Complexity fixed point.
 *
 * Both vectors start at all-ones (or at the given initial vectors, which are
 * mean-normalized first). Each iteration computes F from the previous Q and Q
 * from the previous F, then normalizes both to mean 1.
 *
 * When some fitness decays towards zero on a non-nested matrix, the iteration
 * stops before a value would underflow and returns the last positive iterate
 * with `StopReason::underflow` (converged = false).
 */
RankingResult fitness_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts = {});
RankingResult fitness_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts,
                                  std::span<const double> initial_fitness,
                                  std::span<const double> initial_complexity);

struct SpectroscopyBar {
    std::string product;
    double complexity = 0.0;
    int rank = 0; // global complexity rank, 1 = most complex
};

/// Products exported by `country`, ascending by complexity (ties by identifier).
std::vector<SpectroscopyBar> spectroscopy(const BinaryMatrix& m, const RankingResult& r, const std::string& country);

/// Same profile for any product score vector (e.g. PCI) aligned with `m.products()`.
std::vector<SpectroscopyBar> spectroscopy(const BinaryMatrix& m, std::span<const double> product_scores,
                                          const std::string& country);

} // namespace econfit
