#pragma once

#include <span>
#include <string>
#include <vector>

#include "econfit/binary_matrix.hpp"
#include "econfit/fitness.hpp"

namespace econfit {

/// Standardized ECI/PCI (mean 0, sd 1), aligned with the matrix's identifier order.
struct EciResult {
    std::vector<std::string> countries;
    std::vector<std::string> products;
    std::vector<double> eci;
    std::vector<double> pci;
    std::vector<int> country_rank;
    std::vector<int> product_rank;
    int iterations_used = 0;
    bool converged = false;
    /// Second-largest eigenvalue of the country-country averaging matrix
    /// (spectral route only; 0 otherwise).
    double eigenvalue = 0.0;
};

/// k_c = (1/d_c) sum_p M_cp q_p.
std::vector<double> eci_country_step(const BinaryMatrix& m, std::span<const double> product_values);

/// k_p = (1/u_p) sum_c M_cp f_c.
std::vector<double> eci_product_step(const BinaryMatrix& m, std::span<const double> country_values);

/// (v - mean) / population sd. Throws Error("no variation") on a constant vector.
std::vector<double> standardize(std::span<const double> v);

/**
 * Iterated averaging with z-standardization every iteration.
 *
 * The seed is the diversification vector with a 1% perturbation derived from
 * each country identifier, which keeps it off every invariant subspace that
 * excludes the leading non-constant eigenvector.
 *
 * Stops when the L-infinity change of both standardized vectors is below
 * `opts.tolerance`, or at `opts.max_iterations`. The sign is fixed so that
 * ECI correlates non-negatively with diversification. Throws
 * Error("no variation") when every country is indistinguishable, and
 * Error("degenerate spectrum: ...") when diversification cannot fix the sign.
 */
EciResult eci_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts = {});

/// Eigenvector of the country-country averaging matrix for its second-largest
/// eigenvalue, standardized with the same sign convention. Throws
/// Error("disconnected") or Error("degenerate spectrum").
EciResult eci_spectral(const BinaryMatrix& m);

} // namespace econfit
