#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace econfit {

/// Where a matrix came from, and what construction removed from it.
struct MatrixProvenance {
    std::optional<int> year;
    std::optional<double> threshold;
    std::vector<std::string> pruned_countries;
    std::vector<std::string> pruned_products;
};

/**
 * Binary country-product incidence matrix M_cp.
 *
 * Construction prunes every all-zero row and column, so each country makes at
 * least one product and each product has at least one maker. The retained
 * identifiers keep their input order. Throws `Error("empty matrix")` when
 * nothing survives pruning.
 *
 * Besides the dense row-major cells the matrix keeps row and column index
 * lists, which is what the ranking algorithms iterate over.
 */
class BinaryMatrix {
public:
    BinaryMatrix(std::vector<std::string> countries, std::vector<std::string> products,
                 std::vector<std::uint8_t> cells, MatrixProvenance provenance = {});

    std::size_t num_countries() const noexcept { return countries_.size(); }
    std::size_t num_products() const noexcept { return products_.size(); }
    std::size_t num_ones() const noexcept { return nnz_; }

    const std::vector<std::string>& countries() const noexcept { return countries_; }
    const std::vector<std::string>& products() const noexcept { return products_; }
    const MatrixProvenance& provenance() const noexcept { return provenance_; }

    bool at(std::size_t c, std::size_t p) const { return cells_[c * products_.size() + p] != 0; }

    /// Products made by country `c`, ascending.
    std::span<const std::size_t> products_of(std::size_t c) const;
    /// Countries making product `p`, ascending.
    std::span<const std::size_t> makers_of(std::size_t p) const;

    std::optional<std::size_t> country_index(const std::string& id) const;
    std::optional<std::size_t> product_index(const std::string& id) const;

    /// Row-major copy of the cells.
    const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

    /// Same matrix with rows and columns reordered: row i of the result is
    /// row `country_order[i]` of this one.
    BinaryMatrix permuted(std::span<const std::size_t> country_order,
                          std::span<const std::size_t> product_order) const;

    /// True when the bipartite graph has a single connected component.
    bool connected() const;

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.countries_ == b.countries_ && a.products_ == b.products_ && a.cells_ == b.cells_;
    }

private:
    std::vector<std::string> countries_;
    std::vector<std::string> products_;
    std::vector<std::uint8_t> cells_;
    MatrixProvenance provenance_;
    std::size_t nnz_ = 0;

    std::vector<std::size_t> row_offsets_, row_indices_;
    std::vector<std::size_t> col_offsets_, col_indices_;
};

/// d_c: number of products per country.
std::vector<int> diversification(const BinaryMatrix& m);
/// u_p: number of countries per product.
std::vector<int> ubiquity(const BinaryMatrix& m);

/// Perfectly nested staircase: country i (1-based) makes products 1..ceil(p*i/c).
BinaryMatrix generate_nested(int countries, int products);

/// Staircase with each cell flipped independently with probability `flip_prob`.
/// Cells are visited row-major and each consumes one draw u from
/// UniformStream(seed); the cell flips when u < flip_prob.
BinaryMatrix generate_noisy_nested(int countries, int products, double flip_prob, std::uint64_t seed);

/// Every cell set independently with probability `density`; pruned afterwards.
BinaryMatrix generate_random(int countries, int products, double density, std::uint64_t seed);

/// Two-country example: A makes q1..q10, B makes only q6.
BinaryMatrix fig1_fixture();

/// Exogenous complexities 1..10 for the products q1..q10 of `fig1_fixture`.
std::vector<double> fig1_complexities();

/// CSV with a leading `country` column and one 0/1 column per product.
/// Lines starting with '#' are skipped on read.
void write_matrix_csv(std::ostream& out, const BinaryMatrix& m);
BinaryMatrix read_matrix_csv(std::istream& in);

} // namespace econfit
