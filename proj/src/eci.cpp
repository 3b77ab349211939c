#include "econfit/eci.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "econfit/error.hpp"
#include "econfit/ranking.hpp"

namespace econfit {

namespace {

constexpr double kSeedJitter = 1e-2;

// FNV-1a of the identifier, finalized with the splitmix64 mixer, mapped to [0, 1).
double identifier_unit(const std::string& id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : id) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Flip both vectors when ECI anti-correlates with diversification. Throws
// when the correlation vanishes, since the sign is then undetermined.
void fix_sign(const BinaryMatrix& m, std::vector<double>& eci, std::vector<double>& pci) {
    const auto d = diversification(m);
    const double n = static_cast<double>(d.size());
    const double mean_d = std::accumulate(d.begin(), d.end(), 0.0) / n;
    double cov = 0.0, var_d = 0.0;
    for (std::size_t c = 0; c < d.size(); ++c) {
        cov += eci[c] * (d[c] - mean_d);
        var_d += (d[c] - mean_d) * (d[c] - mean_d);
    }
    // eci has unit variance, so this is the Pearson correlation.
    const double corr = var_d > 0.0 ? cov / std::sqrt(n * var_d) : 0.0;
    if (std::abs(corr) < 1e-8) throw Error("degenerate spectrum: sign not fixed by diversification");
    if (corr < 0.0) {
        for (auto& x : eci) x = -x;
        for (auto& x : pci) x = -x;
    }
}

EciResult finish(const BinaryMatrix& m, std::vector<double> eci) {
    EciResult r;
    r.countries = m.countries();
    r.products = m.products();
    r.pci = standardize(eci_product_step(m, eci));
    r.eci = std::move(eci);
    fix_sign(m, r.eci, r.pci);
    r.country_rank = rank_descending(r.eci, r.countries);
    r.product_rank = rank_descending(r.pci, r.products);
    return r;
}

} // namespace

std::vector<double> eci_country_step(const BinaryMatrix& m, std::span<const double> product_values) {
    if (product_values.size() != m.num_products()) throw Error("product vector has wrong length");
    std::vector<double> k(m.num_countries(), 0.0);
    for (std::size_t c = 0; c < k.size(); ++c) {
        const auto products = m.products_of(c);
        for (auto p : products) k[c] += product_values[p];
        k[c] /= static_cast<double>(products.size());
    }
    return k;
}

std::vector<double> eci_product_step(const BinaryMatrix& m, std::span<const double> country_values) {
    if (country_values.size() != m.num_countries()) throw Error("country vector has wrong length");
    std::vector<double> k(m.num_products(), 0.0);
    for (std::size_t p = 0; p < k.size(); ++p) {
        const auto makers = m.makers_of(p);
        for (auto c : makers) k[p] += country_values[c];
        k[p] /= static_cast<double>(makers.size());
    }
    return k;
}

std::vector<double> standardize(std::span<const double> v) {
    if (v.empty()) throw Error("no variation");
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0, scale = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
        scale = std::max(scale, std::abs(x));
    }
    const double sd = std::sqrt(ss / n);
    if (!(sd > 1e-13 * std::max(scale, 1e-300))) throw Error("no variation");
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [=](double x) { return (x - mean) / sd; });
    return out;
}

EciResult eci_fixed_point(const BinaryMatrix& m, const FitnessOptions& opts) {
    opts.validate();
    if (!m.connected()) throw Error("disconnected");

    // Seeded with diversification plus a perturbation of relative size
    // kSeedJitter keyed on each country's identifier, so the seed keeps a
    // component along every eigenvector and relabeling permutes it exactly.
    const auto d = diversification(m);
    const double n = static_cast<double>(d.size());
    const double mean_d = std::accumulate(d.begin(), d.end(), 0.0) / n;
    double var_d = 0.0;
    for (int x : d) var_d += (x - mean_d) * (x - mean_d);
    const double spread = std::max(std::sqrt(var_d / n), 1.0);
    std::vector<double> seed(d.size());
    for (std::size_t c = 0; c < d.size(); ++c)
        seed[c] = d[c] + kSeedJitter * spread * (identifier_unit(m.countries()[c]) - 0.5);
    auto f = standardize(seed);
    std::vector<double> q;
    int iterations = 0;
    bool converged = false;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto q_next = standardize(eci_product_step(m, f));
        auto f_next = standardize(eci_country_step(m, q_next));
        double step = linf_distance(f_next, f);
        if (!q.empty()) step = std::max(step, linf_distance(q_next, q));
        f = std::move(f_next);
        q = std::move(q_next);
        iterations = it;
        if (it > 1 && step < opts.tolerance) {
            converged = true;
            break;
        }
    }

    auto r = finish(m, std::move(f));
    r.iterations_used = iterations;
    r.converged = converged;
    return r;
}

EciResult eci_spectral(const BinaryMatrix& m) {
    if (!m.connected()) throw Error("disconnected");
    const auto C = static_cast<Eigen::Index>(m.num_countries());
    const auto P = static_cast<Eigen::Index>(m.num_products());
    if (C < 2) throw Error("degenerate spectrum");

    const auto d = diversification(m);
    const auto u = ubiquity(m);
    Eigen::MatrixXd scaled(C, P);
    for (Eigen::Index c = 0; c < C; ++c)
        for (Eigen::Index p = 0; p < P; ++p)
            scaled(c, p) = m.at(c, p) ? 1.0 / std::sqrt(static_cast<double>(d[c]) * u[p]) : 0.0;

    // D_c^-1/2 M D_p^-1 M^T D_c^-1/2 is symmetric and similar to the
    // row-stochastic averaging matrix D_c^-1 M D_p^-1 M^T.
    const Eigen::MatrixXd sym = scaled * scaled.transpose();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("eigen decomposition failed");
    const auto& values = solver.eigenvalues(); // ascending
    const double second = values(C - 2);
    const double third = C >= 3 ? values(C - 3) : 0.0;
    if (second < 1e-10 || second - third < 1e-9) throw Error("degenerate spectrum");

    const Eigen::VectorXd w = solver.eigenvectors().col(C - 2);
    std::vector<double> v(static_cast<std::size_t>(C));
    for (Eigen::Index c = 0; c < C; ++c) v[c] = w(c) / std::sqrt(static_cast<double>(d[c]));

    auto r = finish(m, standardize(v));
    r.iterations_used = 0;
    r.converged = true;
    r.eigenvalue = second;
    return r;
}

} // namespace econfit
