#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "econfit/binary_matrix.hpp"

namespace econfit {

struct ExportRecord {
    std::string country;
    std::string product;
    int year = 0;
    double value = 0.0;
};

/// Summed country x product export values for one year.
struct YearMatrix {
    std::vector<std::string> countries; // sorted, unique
    std::vector<std::string> products;  // sorted, unique
    std::vector<double> values;         // row-major, countries x products

    double at(std::size_t c, std::size_t p) const { return values[c * products.size() + p]; }
};

/**
 * Raw export records plus a per-year dense index. Duplicate
 * (country, product, year) records are summed in the index; `records` keeps
 * them as read.
 */
class ExportTable {
public:
    explicit ExportTable(std::vector<ExportRecord> records);

    const std::vector<ExportRecord>& records() const noexcept { return records_; }
    const std::map<int, YearMatrix>& years() const noexcept { return index_; }
    const YearMatrix& year(int y) const;
    bool has_year(int y) const { return index_.count(y) != 0; }

private:
    std::vector<ExportRecord> records_;
    std::map<int, YearMatrix> index_;
};

/// Reads `country,product,year,value` CSV. Row errors name the line number.
ExportTable parse_export_table(std::istream& in);

/// Writes every cell of every year's index, zeros included, so a re-parse
/// reproduces the same per-year matrices.
void write_export_table(std::ostream& out, const ExportTable& table);

/// Balassa revealed comparative advantage for one year.
struct RcaMatrix {
    int year = 0;
    std::vector<std::string> countries;
    std::vector<std::string> products;
    std::vector<double> values; // row-major
    std::vector<std::string> dropped_countries; // zero total export
    std::vector<std::string> dropped_products;  // zero world export

    double at(std::size_t c, std::size_t p) const { return values[c * products.size() + p]; }
};

RcaMatrix rca(const ExportTable& table, int year);

/// M_cp = 1 iff RCA_cp >= threshold, then pruned.
BinaryMatrix binarize(const RcaMatrix& rca, double threshold = 1.0);

} // namespace econfit
