#include <cmath>
#include <numeric>

#include "doctest.h"
#include "econfit/binary_matrix.hpp"
#include "econfit/eci.hpp"
#include "econfit/error.hpp"
#include "econfit/rng.hpp"
#include "oracles.hpp"

using namespace econfit;

namespace {

BinaryMatrix identity(int n) {
    std::vector<std::string> c, p;
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) {
        c.push_back("c" + std::to_string(i));
        p.push_back("p" + std::to_string(i));
        cells[static_cast<std::size_t>(i * n + i)] = 1;
    }
    return BinaryMatrix(c, p, cells);
}

BinaryMatrix ones(int rows, int cols) {
    std::vector<std::string> c, p;
    for (int i = 0; i < rows; ++i) c.push_back("c" + std::to_string(i));
    for (int i = 0; i < cols; ++i) p.push_back("p" + std::to_string(i));
    return BinaryMatrix(c, p, std::vector<std::uint8_t>(static_cast<std::size_t>(rows * cols), 1));
}

FitnessOptions long_run() {
    FitnessOptions o;
    o.max_iterations = 200000;
    o.tolerance = 1e-12;
    return o;
}

void check_standardized(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    CHECK(std::abs(m) <= 1e-10);
    CHECK(std::abs(std::sqrt(ss / n) - 1.0) <= 1e-10);
}

double correlation_with_diversification(const BinaryMatrix& m, const std::vector<double>& eci) {
    const auto d = diversification(m);
    std::vector<double> dd(d.begin(), d.end());
    const double md = std::accumulate(dd.begin(), dd.end(), 0.0) / static_cast<double>(dd.size());
    double cov = 0.0;
    for (std::size_t i = 0; i < dd.size(); ++i) cov += eci[i] * (dd[i] - md);
    return cov;
}

} // namespace

TEST_CASE("country step examples") {
    const auto k = eci_country_step(fig1_fixture(), fig1_complexities());
    CHECK(k[0] == 5.5);
    CHECK(k[1] == 6.0);
    CHECK(eci_country_step(identity(3), std::vector<double>{1, 1, 1}) == std::vector<double>{1, 1, 1});
    CHECK(eci_country_step(ones(2, 4), std::vector<double>{1, 2, 3, 4}) == std::vector<double>{2.5, 2.5});
    CHECK_THROWS_AS(eci_country_step(ones(2, 4), std::vector<double>{1, 2}), Error);
}

TEST_CASE("product step examples") {
    const auto m = fig1_fixture();
    const auto k = eci_product_step(m, std::vector<double>{10, 1});
    for (std::size_t p = 0; p < k.size(); ++p) CHECK(k[p] == (m.products()[p] == "q6" ? 5.5 : 10.0));
    CHECK(eci_product_step(identity(3), std::vector<double>{1, 1, 1}) == std::vector<double>{1, 1, 1});
    CHECK(eci_product_step(ones(2, 3), std::vector<double>{0, 2}) == std::vector<double>{1, 1, 1});
    CHECK_THROWS_AS(eci_product_step(ones(2, 3), std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("standardize") {
    const auto z = standardize(std::vector<double>{1, 2, 3, 4});
    check_standardized(z);
    CHECK(z[0] < z[1]);
    CHECK_THROWS_WITH_AS(standardize(std::vector<double>{3, 3, 3}), "no variation", Error);
    CHECK_THROWS_AS(standardize(std::vector<double>{}), Error);
}

TEST_CASE("full-ones matrix has no variation") {
    CHECK_THROWS_WITH_AS(eci_fixed_point(ones(3, 4)), "no variation", Error);
    CHECK_THROWS_WITH_AS(eci_spectral(ones(3, 4)), doctest::Contains("degenerate spectrum"), Error);
}

TEST_CASE("disconnected matrices are rejected by both routes") {
    CHECK_THROWS_WITH_AS(eci_spectral(identity(2)), "disconnected", Error);
    CHECK_THROWS_WITH_AS(eci_fixed_point(identity(2)), "disconnected", Error);
}

TEST_CASE("nested 4x4: eci increases with diversification, both routes agree") {
    const auto m = generate_nested(4, 4);
    const auto it = eci_fixed_point(m, long_run());
    const auto sp = eci_spectral(m);
    CHECK(it.converged);
    for (std::size_t c = 1; c < 4; ++c) {
        CHECK(it.eci[c] > it.eci[c - 1]);
        CHECK(sp.eci[c] > sp.eci[c - 1]);
    }
    CHECK(it.country_rank == sp.country_rank);
    CHECK(it.product_rank == sp.product_rank);
    check_standardized(it.eci);
    check_standardized(it.pci);
    check_standardized(sp.eci);
    check_standardized(sp.pci);
    CHECK(sp.eigenvalue > 0.0);
    CHECK(sp.eigenvalue < 1.0);
}

TEST_CASE("fig1 fixture: iterated eci follows diversification") {
    const auto r = eci_fixed_point(fig1_fixture(), long_run());
    CHECK(r.eci[0] > r.eci[1]);
    CHECK(correlation_with_diversification(fig1_fixture(), r.eci) >= 0.0);
}

TEST_CASE("random 6x9 matrices: iterated eci equals spectral eci") {
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto m = generate_random(6, 9, 0.4, seed);
        EciResult sp;
        try {
            sp = eci_spectral(m);
        } catch (const Error&) {
            continue; // disconnected or no spectral gap
        }
        const auto it = eci_fixed_point(m, long_run());
        ++compared;
        CHECK(oracle::spearman(it.eci, sp.eci) == 1.0);
        CHECK(oracle::spearman(it.pci, sp.pci) == 1.0);
        for (std::size_t c = 0; c < it.eci.size(); ++c) CHECK(std::abs(it.eci[c] - sp.eci[c]) <= 1e-6);
    }
    CHECK(compared >= 20);
}

TEST_CASE("iteration limit is reported") {
    FitnessOptions o;
    o.max_iterations = 1;
    const auto r = eci_fixed_point(generate_noisy_nested(8, 12, 0.1, 2), o);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations_used == 1);
}

TEST_CASE("property: adding a product at the mean complexity leaves one-step eci unchanged") {
    UniformStream rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const int P = 3 + static_cast<int>(rng.next() * 6);
        std::vector<double> q(static_cast<std::size_t>(P));
        for (auto& x : q) x = 10.0 * rng.next();
        std::vector<std::string> products;
        for (int p = 0; p < P; ++p) products.push_back("p" + std::to_string(p));
        const BinaryMatrix one({"c"}, products, std::vector<std::uint8_t>(static_cast<std::size_t>(P), 1));
        const double before = eci_country_step(one, q)[0];

        auto q2 = q;
        q2.push_back(before);
        products.push_back("extra");
        const BinaryMatrix two({"c"}, products, std::vector<std::uint8_t>(static_cast<std::size_t>(P + 1), 1));
        CHECK(eci_country_step(two, q2)[0] == doctest::Approx(before).epsilon(1e-14));

        // Duplicating the whole basket changes the count but not the mean.
        auto q3 = q;
        q3.insert(q3.end(), q.begin(), q.end());
        std::vector<std::string> doubled;
        for (int p = 0; p < 2 * P; ++p) doubled.push_back("d" + std::to_string(p));
        const BinaryMatrix three({"c"}, doubled, std::vector<std::uint8_t>(static_cast<std::size_t>(2 * P), 1));
        CHECK(eci_country_step(three, q3)[0] == doctest::Approx(before).epsilon(1e-14));
    }
}

TEST_CASE("property: permutation equivariance") {
    UniformStream rng(37);
    int compared = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto m = generate_noisy_nested(7, 10, 0.15, seed);
        EciResult r;
        try {
            r = eci_spectral(m);
        } catch (const Error&) {
            continue;
        }
        std::vector<std::size_t> rows(m.num_countries()), cols(m.num_products());
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        std::iota(cols.begin(), cols.end(), std::size_t{0});
        for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.next_raw() % i]);
        for (std::size_t i = cols.size(); i > 1; --i) std::swap(cols[i - 1], cols[rng.next_raw() % i]);
        const auto pm = m.permuted(rows, cols);
        const auto pr = eci_spectral(pm);
        const auto pi = eci_fixed_point(pm, long_run());
        const auto ri = eci_fixed_point(m, long_run());
        ++compared;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(pr.eci[i] == doctest::Approx(r.eci[rows[i]]).epsilon(1e-8));
            CHECK(pi.eci[i] == doctest::Approx(ri.eci[rows[i]]).epsilon(1e-8));
        }
        for (std::size_t j = 0; j < cols.size(); ++j) CHECK(pr.pci[j] == doctest::Approx(r.pci[cols[j]]).epsilon(1e-8));
    }
    CHECK(compared >= 10);
}

TEST_CASE("property: standardization and sign on every successful return") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto m = generate_random(10, 15, 0.3, seed);
        for (int route = 0; route < 2; ++route) {
            EciResult r;
            try {
                r = route == 0 ? eci_spectral(m) : eci_fixed_point(m, long_run());
            } catch (const Error&) {
                continue;
            }
            check_standardized(r.eci);
            check_standardized(r.pci);
            for (double x : r.eci) CHECK(std::isfinite(x));
            CHECK(correlation_with_diversification(m, r.eci) > 0.0);
        }
    }
}

TEST_CASE("diversification lying on a lower eigenvector still reaches the second one") {
    // In both matrices the standardized diversification is an eigenvector of
    // the averaging map for its smallest eigenvalue.
    const BinaryMatrix a({"c1", "c2", "c3"}, {"p1", "p2", "p3", "p4", "p5", "p6"},
                         {1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1});
    const BinaryMatrix b({"c1", "c2", "c3"}, {"p1", "p2", "p3", "p4"}, {0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0});
    for (const auto* m : {&a, &b}) {
        const auto sp = eci_spectral(*m);
        const auto it = eci_fixed_point(*m, long_run());
        CHECK(it.converged);
        for (std::size_t c = 0; c < 3; ++c) CHECK(it.eci[c] == doctest::Approx(sp.eci[c]).epsilon(1e-8));
        CHECK(it.country_rank == sp.country_rank);
    }
}
