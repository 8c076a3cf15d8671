#include "colsel/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "colsel/errors.hpp"

namespace colsel {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(begin));
            break;
        }
        cells.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

bool is_blank(const std::string& line) {
    for (char c : line) {
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

}  // namespace

Mat load_csv_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    std::string line;
    std::size_t line_no = 0;
    bool saw_first = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        const std::vector<std::string> cells = split_cells(line);

        if (!saw_first) {
            saw_first = true;
            // Header auto-detection: a first row with any non-numeric cell.
            bool all_numeric = true;
            double tmp;
            for (const auto& c : cells) {
                if (!parse_double(c, tmp)) {
                    all_numeric = false;
                    break;
                }
            }
            width = cells.size();
            if (!all_numeric) continue;
        }

        if (cells.size() != width) {
            fail("RaggedRows", "line " + std::to_string(line_no) + " has " +
                                   std::to_string(cells.size()) + " cells, expected " +
                                   std::to_string(width));
        }
        std::vector<double> row(width);
        for (std::size_t c = 0; c < width; ++c) {
            if (!parse_double(cells[c], row[c])) {
                fail("NonNumericCell", "line " + std::to_string(line_no) + ", column " +
                                           std::to_string(c + 1) + ": '" + trim(cells[c]) + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail("EmptyMatrix", path + " contains no data rows");

    Mat m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
    return m;
}

ColumnMatrix load_csv(const DatasetHandle& handle) {
    Mat raw = load_csv_raw(handle.path);
    if (handle.orientation == Orientation::rows_are_features) raw = raw.transposed();
    if (handle.policy == NormalizationPolicy::normalize) {
        return ColumnMatrix::normalize_columns(raw);
    }
    return ColumnMatrix::from_normalized(raw, 1e-6);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Mat& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("IoError", "cannot write " + path);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) fail("IoError", "write failed for " + path);
}

}  // namespace colsel
