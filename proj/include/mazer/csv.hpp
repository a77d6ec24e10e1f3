// csv.hpp - result tables and CSV export
//
// Numbers are written with 15 significant digits in the C locale, rows are
// newline terminated and metadata lines start with '#'. Everything after the
// metadata block (header plus rows) depends only on the computed values.

#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "mazer/errors.hpp"
#include "mazer/propagator.hpp"

namespace mazer {

inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> metadata;  // written as "# <line>"

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw InvalidArgument("ResultTable: row width does not match the header");
        for (double v : row)
            if (!std::isfinite(v)) throw InvalidArgument("ResultTable: non-finite value");
        rows.push_back(std::move(row));
    }
};

inline void write_data(std::ostream& os, const ResultTable& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
        os << '\n';
    }
}

inline void write_csv(std::ostream& os, const ResultTable& t) {
    for (const auto& m : t.metadata) os << "# " << m << '\n';
    write_data(os, t);
}

/// Columns t, W, S, norm, P_right.
inline ResultTable time_series_table(const std::vector<TimeSample>& series) {
    ResultTable t;
    t.columns = {"t", "W", "S", "norm", "P_right"};
    for (const auto& s : series) t.add_row({s.t, s.inversion, s.entropy, s.norm, s.p_right});
    return t;
}

/// Columns z, |psi_e|^2, |psi_g|^2 for one snapshot.
inline ResultTable snapshot_table(const Grid1D& grid, const Snapshot& s) {
    ResultTable t;
    t.columns = {"z", "density_e", "density_g"};
    t.metadata.push_back("t: " + format_number(s.t));
    for (std::size_t i = 0; i < grid.points; ++i) t.add_row({grid.z(i), s.excited[i], s.ground[i]});
    return t;
}

}  // namespace mazer
