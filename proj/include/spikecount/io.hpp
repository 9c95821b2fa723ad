#pragma once

// CSV observation matrices and CSV rate reports.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "harness.hpp"

namespace spikecount {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc() && ptr == cell.data() + cell.size();
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace detail

/// Observation matrix from CSV: one observation per row, comma separated.
/// A first line with any non-numeric cell is taken as a header.
inline Eigen::MatrixXd parse_matrix_csv(std::istream& in, const std::string& source = "<input>") {
    std::vector<double> data;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_commas(line);
        std::vector<double> values(cells.size());
        std::size_t bad = cells.size();
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (!detail::parse_double(cells[j], values[j])) {
                bad = j;
                break;
            }
        }
        if (first_content) {
            first_content = false;
            if (bad != cells.size()) {
                cols = cells.size();  // header
                continue;
            }
        }
        if (bad != cells.size())
            throw DataError(source + ": line " + std::to_string(lineno) + ", column " + std::to_string(bad + 1) +
                            ": non-numeric cell '" + std::string(detail::trim(cells[bad])) + "'");
        if (cols == 0) cols = cells.size();
        if (cells.size() != cols)
            throw DataError(source + ": line " + std::to_string(lineno) + ": expected " + std::to_string(cols) +
                            " columns, found " + std::to_string(cells.size()));
        for (double v : values) {
            if (!std::isfinite(v))
                throw DataError(source + ": line " + std::to_string(lineno) + ": non-finite value");
        }
        data.insert(data.end(), values.begin(), values.end());
        ++rows;
    }
    if (rows == 0) throw DataError(source + ": no numeric rows");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * cols + j];
    return x;
}

inline Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_matrix_csv(in, path);
}

inline void write_matrix_csv(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXd>& x) {
    char buf[32];
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Rate reports

inline constexpr const char* kReportHeader =
    "model,estimator,p,n,c,C,gamma,sigma2_mode,reps,misest,overest,underest,mean_sigma2,seconds,"
    "misest_se,overest_se,underest_se,alpha,q0,failures";

namespace detail {

inline std::string fmt_number(double v, const char* spec = "%.6g") {
    if (std::isnan(v)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace detail

/// Writes the report with a header row. With include_timing = false the
/// seconds column is 0, which makes the bytes a pure function of the config.
inline void write_report_csv(std::ostream& out, const RateReport& report, bool include_timing = true) {
    using detail::fmt_number;
    out << kReportHeader << '\n';
    for (const auto& r : report.rows) {
        out << r.model << ',' << to_string(r.estimator) << ',' << r.point.p << ',' << r.point.n << ','
            << fmt_number(r.c()) << ',' << fmt_number(r.C) << ',' << fmt_number(r.gamma) << ','
            << to_string(r.sigma2_mode) << ',' << r.reps << ',' << fmt_number(r.misest()) << ','
            << fmt_number(r.overest()) << ',' << fmt_number(r.underest()) << ',' << fmt_number(r.mean_sigma2, "%.8g")
            << ',' << (include_timing ? fmt_number(r.seconds, "%.3f") : std::string("0")) << ','
            << fmt_number(RateRow::standard_error(r.misest(), r.reps)) << ','
            << fmt_number(RateRow::standard_error(r.overest(), r.reps)) << ','
            << fmt_number(RateRow::standard_error(r.underest(), r.reps)) << ','
            << (r.point.alpha ? fmt_number(*r.point.alpha) : std::string()) << ',' << r.q0 << ',' << r.failures
            << '\n';
    }
}

inline std::string report_csv(const RateReport& report, bool include_timing = true) {
    std::ostringstream s;
    write_report_csv(s, report, include_timing);
    return s.str();
}

}  // namespace spikecount
