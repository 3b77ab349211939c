#include "econfit/export_table.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "csv.hpp"
#include "econfit/error.hpp"

namespace econfit {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::size_t position(const std::vector<std::string>& sorted, const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin());
}

} // namespace

ExportTable::ExportTable(std::vector<ExportRecord> records) : records_(std::move(records)) {
    if (records_.empty()) throw Error("no records");
    std::map<int, std::pair<std::vector<std::string>, std::vector<std::string>>> ids;
    for (const auto& r : records_) {
        if (r.country.empty() || r.product.empty()) throw Error("record with empty identifier");
        if (r.year < 1900 || r.year > 2100) throw Error("year " + std::to_string(r.year) + " outside [1900, 2100]");
        if (!(r.value >= 0.0) || !std::isfinite(r.value)) throw Error("export value must be finite and non-negative");
        auto& [countries, products] = ids[r.year];
        countries.push_back(r.country);
        products.push_back(r.product);
    }
    for (auto& [year, lists] : ids) {
        YearMatrix ym;
        ym.countries = sorted_unique(std::move(lists.first));
        ym.products = sorted_unique(std::move(lists.second));
        ym.values.assign(ym.countries.size() * ym.products.size(), 0.0);
        index_.emplace(year, std::move(ym));
    }
    for (const auto& r : records_) {
        auto& ym = index_.at(r.year);
        ym.values[position(ym.countries, r.country) * ym.products.size() + position(ym.products, r.product)] += r.value;
    }
}

const YearMatrix& ExportTable::year(int y) const {
    const auto it = index_.find(y);
    if (it == index_.end()) throw Error("year " + std::to_string(y) + " not present in export table");
    return it->second;
}

ExportTable parse_export_table(std::istream& in) {
    csv::LineReader reader(in);
    csv::expect_header(reader, {"country", "product", "year", "value"});
    std::vector<ExportRecord> records;
    std::string line;
    while (reader.next(line)) {
        const auto n = reader.line_no();
        const auto fields = csv::split(line, n);
        if (fields.size() != 4) throw ParseError(n, "expected 4 fields, found " + std::to_string(fields.size()));
        ExportRecord r;
        r.country = fields[0];
        r.product = fields[1];
        if (r.country.empty() || r.product.empty()) throw ParseError(n, "empty identifier");
        const auto year = csv::parse_int(fields[2], n, "year");
        if (year < 1900 || year > 2100) throw ParseError(n, "year " + fields[2] + " outside [1900, 2100]");
        r.year = static_cast<int>(year);
        r.value = csv::parse_double(fields[3], n, "value");
        if (r.value < 0.0) throw ParseError(n, "negative export value");
        records.push_back(std::move(r));
    }
    if (records.empty()) throw Error("no records");
    return ExportTable(std::move(records));
}

void write_export_table(std::ostream& out, const ExportTable& table) {
    out << "country,product,year,value\n";
    for (const auto& [year, ym] : table.years()) {
        for (std::size_t c = 0; c < ym.countries.size(); ++c) {
            for (std::size_t p = 0; p < ym.products.size(); ++p) {
                out << csv::escape(ym.countries[c]) << ',' << csv::escape(ym.products[p]) << ',' << year << ','
                    << csv::format_double(ym.at(c, p)) << '\n';
            }
        }
    }
}

RcaMatrix rca(const ExportTable& table, int year) {
    const auto& ym = table.year(year);
    const std::size_t C = ym.countries.size(), P = ym.products.size();

    std::vector<double> country_total(C, 0.0), product_total(P, 0.0);
    double world = 0.0;
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t p = 0; p < P; ++p) {
            const double x = ym.at(c, p);
            country_total[c] += x;
            product_total[p] += x;
            world += x;
        }
    }
    if (!(world > 0.0)) throw Error("total world export for year " + std::to_string(year) + " is zero");

    RcaMatrix out;
    out.year = year;
    std::vector<std::size_t> rows, cols;
    for (std::size_t c = 0; c < C; ++c) {
        if (country_total[c] > 0.0) {
            rows.push_back(c);
            out.countries.push_back(ym.countries[c]);
        } else {
            out.dropped_countries.push_back(ym.countries[c]);
        }
    }
    for (std::size_t p = 0; p < P; ++p) {
        if (product_total[p] > 0.0) {
            cols.push_back(p);
            out.products.push_back(ym.products[p]);
        } else {
            out.dropped_products.push_back(ym.products[p]);
        }
    }
    out.values.reserve(rows.size() * cols.size());
    for (auto c : rows) {
        for (auto p : cols) {
            const double share_in_country = ym.at(c, p) / country_total[c];
            const double share_in_world = product_total[p] / world;
            out.values.push_back(share_in_country / share_in_world);
        }
    }
    return out;
}

BinaryMatrix binarize(const RcaMatrix& rca, double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold)) throw Error("threshold must be positive");
    std::vector<std::uint8_t> cells(rca.values.size());
    std::transform(rca.values.begin(), rca.values.end(), cells.begin(),
                   [threshold](double v) -> std::uint8_t { return v >= threshold ? 1 : 0; });
    MatrixProvenance provenance;
    provenance.year = rca.year;
    provenance.threshold = threshold;
    return BinaryMatrix(rca.countries, rca.products, std::move(cells), std::move(provenance));
}

} // namespace econfit
