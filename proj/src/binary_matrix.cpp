#include "econfit/binary_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <unordered_set>

#include "csv.hpp"
#include "econfit/error.hpp"
#include "econfit/rng.hpp"

namespace econfit {

namespace {

void require_unique(const std::vector<std::string>& ids, const char* kind) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw Error(std::string("empty ") + kind + " identifier");
        if (!seen.insert(id).second) throw Error(std::string("duplicate ") + kind + " identifier '" + id + "'");
    }
}

std::string padded(char prefix, int index, int count) {
    const auto width = std::to_string(count).size();
    auto digits = std::to_string(index);
    return prefix + std::string(width - digits.size(), '0') + digits;
}

} // namespace

BinaryMatrix::BinaryMatrix(std::vector<std::string> countries, std::vector<std::string> products,
                           std::vector<std::uint8_t> cells, MatrixProvenance provenance)
    : provenance_(std::move(provenance)) {
    const std::size_t rows = countries.size();
    const std::size_t cols = products.size();
    if (cells.size() != rows * cols) throw Error("cell count does not match matrix dimensions");
    require_unique(countries, "country");
    require_unique(products, "product");

    std::vector<int> row_sum(rows, 0), col_sum(cols, 0);
    for (std::size_t c = 0; c < rows; ++c) {
        for (std::size_t p = 0; p < cols; ++p) {
            const auto v = cells[c * cols + p];
            if (v > 1) throw Error("matrix cells must be 0 or 1");
            row_sum[c] += v;
            col_sum[p] += v;
        }
    }

    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t c = 0; c < rows; ++c) {
        if (row_sum[c] > 0) {
            keep_rows.push_back(c);
            countries_.push_back(std::move(countries[c]));
        } else {
            provenance_.pruned_countries.push_back(countries[c]);
        }
    }
    for (std::size_t p = 0; p < cols; ++p) {
        if (col_sum[p] > 0) {
            keep_cols.push_back(p);
            products_.push_back(std::move(products[p]));
        } else {
            provenance_.pruned_products.push_back(products[p]);
        }
    }
    // Removing empty rows cannot empty a column, so one pass is enough.
    if (countries_.empty() || products_.empty()) throw Error("empty matrix");

    const std::size_t C = countries_.size();
    const std::size_t P = products_.size();
    cells_.resize(C * P);
    for (std::size_t i = 0; i < C; ++i)
        for (std::size_t j = 0; j < P; ++j) cells_[i * P + j] = cells[keep_rows[i] * cols + keep_cols[j]];

    row_offsets_.assign(C + 1, 0);
    col_offsets_.assign(P + 1, 0);
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            if (cells_[c * P + p]) {
                row_indices_.push_back(p);
                ++col_offsets_[p + 1];
            }
        }
        row_offsets_[c + 1] = row_indices_.size();
    }
    nnz_ = row_indices_.size();
    for (std::size_t p = 0; p < P; ++p) col_offsets_[p + 1] += col_offsets_[p];
    col_indices_.resize(nnz_);
    std::vector<std::size_t> fill(col_offsets_.begin(), col_offsets_.end() - 1);
    for (std::size_t c = 0; c < C; ++c)
        for (std::size_t k = row_offsets_[c]; k < row_offsets_[c + 1]; ++k) col_indices_[fill[row_indices_[k]]++] = c;
}

std::span<const std::size_t> BinaryMatrix::products_of(std::size_t c) const {
    return {row_indices_.data() + row_offsets_[c], row_offsets_[c + 1] - row_offsets_[c]};
}

std::span<const std::size_t> BinaryMatrix::makers_of(std::size_t p) const {
    return {col_indices_.data() + col_offsets_[p], col_offsets_[p + 1] - col_offsets_[p]};
}

std::optional<std::size_t> BinaryMatrix::country_index(const std::string& id) const {
    const auto it = std::find(countries_.begin(), countries_.end(), id);
    if (it == countries_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - countries_.begin());
}

std::optional<std::size_t> BinaryMatrix::product_index(const std::string& id) const {
    const auto it = std::find(products_.begin(), products_.end(), id);
    if (it == products_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - products_.begin());
}

BinaryMatrix BinaryMatrix::permuted(std::span<const std::size_t> country_order,
                                    std::span<const std::size_t> product_order) const {
    const std::size_t C = num_countries(), P = num_products();
    if (country_order.size() != C || product_order.size() != P) throw Error("permutation has wrong length");
    std::vector<std::string> countries, products;
    for (auto c : country_order) countries.push_back(countries_.at(c));
    for (auto p : product_order) products.push_back(products_.at(p));
    std::vector<std::uint8_t> cells(C * P);
    for (std::size_t i = 0; i < C; ++i)
        for (std::size_t j = 0; j < P; ++j) cells[i * P + j] = cells_[country_order[i] * P + product_order[j]];
    return BinaryMatrix(std::move(countries), std::move(products), std::move(cells), provenance_);
}

bool BinaryMatrix::connected() const {
    const std::size_t C = num_countries();
    std::vector<bool> seen_country(C, false), seen_product(num_products(), false);
    std::vector<std::size_t> stack{0};
    seen_country[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto c = stack.back();
        stack.pop_back();
        for (auto p : products_of(c)) {
            if (seen_product[p]) continue;
            seen_product[p] = true;
            for (auto other : makers_of(p)) {
                if (!seen_country[other]) {
                    seen_country[other] = true;
                    ++reached;
                    stack.push_back(other);
                }
            }
        }
    }
    // Every product has a maker, so reaching all countries reaches all products.
    return reached == C;
}

std::vector<int> diversification(const BinaryMatrix& m) {
    std::vector<int> d(m.num_countries());
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = static_cast<int>(m.products_of(c).size());
    return d;
}

std::vector<int> ubiquity(const BinaryMatrix& m) {
    std::vector<int> u(m.num_products());
    for (std::size_t p = 0; p < u.size(); ++p) u[p] = static_cast<int>(m.makers_of(p).size());
    return u;
}

namespace {

std::vector<std::uint8_t> staircase_cells(int c, int p) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(c) * p, 0);
    for (int i = 1; i <= c; ++i) {
        // ceil(p*i/c) in integers
        const long long reach = (static_cast<long long>(p) * i + c - 1) / c;
        for (long long j = 0; j < reach; ++j) cells[static_cast<std::size_t>(i - 1) * p + j] = 1;
    }
    return cells;
}

std::vector<std::string> labels(char prefix, int count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (int i = 1; i <= count; ++i) out.push_back(padded(prefix, i, count));
    return out;
}

} // namespace

BinaryMatrix generate_nested(int countries, int products) {
    if (countries < 1 || products < countries) throw Error("generate_nested requires 1 <= countries <= products");
    return BinaryMatrix(labels('c', countries), labels('p', products), staircase_cells(countries, products));
}

BinaryMatrix generate_noisy_nested(int countries, int products, double flip_prob, std::uint64_t seed) {
    if (countries < 1 || products < countries) throw Error("generate_noisy_nested requires 1 <= countries <= products");
    if (!(flip_prob >= 0.0 && flip_prob < 0.5)) throw Error("flip probability must lie in [0, 0.5)");
    auto cells = staircase_cells(countries, products);
    UniformStream stream(seed);
    for (auto& cell : cells)
        if (stream.next() < flip_prob) cell ^= 1;
    return BinaryMatrix(labels('c', countries), labels('p', products), std::move(cells));
}

BinaryMatrix generate_random(int countries, int products, double density, std::uint64_t seed) {
    if (countries < 1 || products < 1) throw Error("generate_random requires positive dimensions");
    if (!(density > 0.0 && density <= 1.0)) throw Error("density must lie in (0, 1]");
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(countries) * products);
    UniformStream stream(seed);
    for (auto& cell : cells) cell = stream.next() < density ? 1 : 0;
    return BinaryMatrix(labels('c', countries), labels('p', products), std::move(cells));
}

BinaryMatrix fig1_fixture() {
    std::vector<std::string> products;
    for (int i = 1; i <= 10; ++i) products.push_back("q" + std::to_string(i));
    std::vector<std::uint8_t> cells(20, 0);
    for (int p = 0; p < 10; ++p) cells[p] = 1;
    cells[10 + 5] = 1;
    return BinaryMatrix({"A", "B"}, std::move(products), std::move(cells));
}

std::vector<double> fig1_complexities() {
    return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
}

void write_matrix_csv(std::ostream& out, const BinaryMatrix& m) {
    out << "country";
    for (const auto& p : m.products()) out << ',' << csv::escape(p);
    out << '\n';
    for (std::size_t c = 0; c < m.num_countries(); ++c) {
        out << csv::escape(m.countries()[c]);
        for (std::size_t p = 0; p < m.num_products(); ++p) out << (m.at(c, p) ? ",1" : ",0");
        out << '\n';
    }
}

BinaryMatrix read_matrix_csv(std::istream& in) {
    csv::LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw Error("empty matrix");
    auto header = csv::split(line, reader.line_no());
    if (header.empty() || header.front() != "country")
        throw ParseError(reader.line_no(), "matrix header must start with 'country'");
    std::vector<std::string> products(header.begin() + 1, header.end());
    std::vector<std::string> countries;
    std::vector<std::uint8_t> cells;
    while (reader.next(line)) {
        const auto fields = csv::split(line, reader.line_no());
        if (fields.size() != header.size())
            throw ParseError(reader.line_no(), "expected " + std::to_string(header.size()) + " fields");
        countries.push_back(fields.front());
        for (std::size_t j = 1; j < fields.size(); ++j) {
            if (fields[j] == "1") cells.push_back(1);
            else if (fields[j] == "0") cells.push_back(0);
            else throw ParseError(reader.line_no(), "matrix cell must be 0 or 1");
        }
    }
    if (countries.empty() || products.empty()) throw Error("empty matrix");
    return BinaryMatrix(std::move(countries), std::move(products), std::move(cells));
}

double standard_normal(UniformStream& stream) {
    const double u1 = 1.0 - stream.next(); // (0, 1]
    const double u2 = stream.next();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace econfit
