#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tdanet/market_pipeline.hpp"
#include "tdanet/persistence.hpp"
#include "tdanet/weighted_graph.hpp"

namespace tdanet {

// 12 significant digits everywhere, so emitted artifacts are diff-stable.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

inline bool parse_full_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

inline bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

}  // namespace detail

// Wide price CSV: header `date,TICKER1,...`, then one row per date with
// ISO-8601 dates and strictly positive decimal prices. Rows arriving out of
// order are sorted with a warning; duplicate dates, blank cells and
// unparseable or nonpositive prices are rejected with row/column coordinates.
inline PricePanel ingest_prices(std::istream& in, std::ostream* warnings = &std::cerr) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("price CSV is empty");
    const std::vector<std::string> header = detail::split_csv_line(line);
    if (header.size() < 2 || header[0] != "date")
        throw std::runtime_error("price CSV header must be date,TICKER1,... got \"" + line + "\"");
    PricePanel panel;
    panel.tickers.assign(header.begin() + 1, header.end());
    std::unordered_set<std::string> seen_tickers;
    for (std::size_t c = 0; c < panel.tickers.size(); ++c) {
        if (panel.tickers[c].empty())
            throw std::runtime_error("row 1, column " + std::to_string(c + 2) +
                                     ": empty ticker name");
        if (!seen_tickers.insert(panel.tickers[c]).second)
            throw std::runtime_error("duplicate ticker " + panel.tickers[c]);
    }

    std::vector<std::pair<std::string, std::vector<double>>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        if (!detail::is_iso_date(fields[0]))
            throw std::runtime_error("row " + std::to_string(line_no) +
                                     ", column \"date\": not an ISO-8601 date: \"" + fields[0] +
                                     "\"");
        std::vector<double> prices(panel.tickers.size());
        for (std::size_t c = 0; c < panel.tickers.size(); ++c) {
            const std::string& cell = fields[c + 1];
            if (cell.empty())
                throw std::runtime_error("row " + std::to_string(line_no) + ", column \"" +
                                         panel.tickers[c] + "\": empty cell");
            double value = 0.0;
            if (!detail::parse_full_double(cell, value))
                throw std::runtime_error("row " + std::to_string(line_no) + ", column \"" +
                                         panel.tickers[c] + "\": unparseable number \"" + cell +
                                         "\"");
            if (!std::isfinite(value) || value <= 0.0)
                throw std::runtime_error("row " + std::to_string(line_no) + ", column \"" +
                                         panel.tickers[c] + "\": nonpositive price " + cell);
            prices[c] = value;
        }
        rows.emplace_back(fields[0], std::move(prices));
    }
    if (rows.empty()) throw std::runtime_error("price CSV has no data rows");

    bool sorted = true;
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].first < rows[r - 1].first) sorted = false;
    if (!sorted) {
        if (warnings) *warnings << "warning: price rows were not sorted by date; sorting\n";
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].first == rows[r - 1].first)
            throw std::runtime_error("duplicate date " + rows[r].first);

    panel.prices.assign(panel.tickers.size(), std::vector<double>(rows.size(), 0.0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        panel.dates.push_back(rows[r].first);
        for (std::size_t c = 0; c < panel.tickers.size(); ++c)
            panel.prices[c][r] = rows[r].second[c];
    }
    validate_panel(panel);
    return panel;
}

inline PricePanel ingest_prices_file(const std::string& path, std::ostream* warnings = &std::cerr) {
    std::ifstream in = detail::open_input(path);
    return ingest_prices(in, warnings);
}

struct DistanceMatrixInput {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> matrix;
};

// Distance-matrix CSV: first row holds the labels, each following row is one
// matrix row.
inline DistanceMatrixInput ingest_distance_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("distance-matrix CSV is empty");
    DistanceMatrixInput out;
    out.labels = detail::split_csv_line(line);
    const std::size_t n = out.labels.size();
    for (std::size_t c = 0; c < n; ++c)
        if (out.labels[c].empty())
            throw std::runtime_error("row 1, column " + std::to_string(c + 1) + ": empty label");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != n)
            throw std::runtime_error("row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(n) + " entries, got " +
                                     std::to_string(fields.size()));
        std::vector<double> row(n);
        for (std::size_t c = 0; c < n; ++c)
            if (!detail::parse_full_double(fields[c], row[c]))
                throw std::runtime_error("row " + std::to_string(line_no) + ", column " +
                                         std::to_string(c + 1) + ": unparseable number \"" +
                                         fields[c] + "\"");
        out.matrix.push_back(std::move(row));
    }
    if (out.matrix.size() != n)
        throw std::runtime_error("distance matrix has " + std::to_string(out.matrix.size()) +
                                 " rows but " + std::to_string(n) + " labels");
    return out;
}

inline DistanceMatrixInput ingest_distance_matrix_file(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return ingest_distance_matrix(in);
}

// Point-cloud CSV: one point per row, comma-separated coordinates, no header.
inline PointCloud ingest_point_cloud(std::istream& in) {
    PointCloud pc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        std::vector<double> point(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (!detail::parse_full_double(fields[c], point[c]))
                throw std::runtime_error("row " + std::to_string(line_no) + ", column " +
                                         std::to_string(c + 1) + ": unparseable number \"" +
                                         fields[c] + "\"");
        pc.points.push_back(std::move(point));
    }
    validate_point_cloud(pc);
    return pc;
}

inline PointCloud ingest_point_cloud_file(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return ingest_point_cloud(in);
}

// Diagram JSON: {"dims": {"0": [[birth, death], ...], ...}, "inf_cap_hint": h}
// with "inf" as the literal string for infinite deaths and points sorted by
// (birth, death). Only nonempty dimensions are emitted.
inline void emit_diagram(const PersistenceDiagram& d, std::ostream& out,
                         double inf_cap_hint = 2.0) {
    std::map<int, std::vector<PersistencePoint>> by_dim;
    for (const PersistencePoint& p : d.points) by_dim[p.dim].push_back(p);
    out << "{\"dims\":{";
    bool first_dim = true;
    for (auto& [dim, points] : by_dim) {
        if (!first_dim) out << ",";
        first_dim = false;
        std::sort(points.begin(), points.end());
        out << "\"" << dim << "\":[";
        for (std::size_t k = 0; k < points.size(); ++k) {
            if (k) out << ",";
            out << "[" << format_number(points[k].birth) << ",";
            if (points[k].essential())
                out << "\"inf\"";
            else
                out << format_number(points[k].death);
            out << "]";
        }
        out << "]";
    }
    out << "},\"inf_cap_hint\":" << format_number(inf_cap_hint) << "}\n";
}

inline void emit_diagram_file(const PersistenceDiagram& d, const std::string& path,
                              double inf_cap_hint = 2.0) {
    std::ofstream out = detail::open_output(path);
    emit_diagram(d, out, inf_cap_hint);
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline PersistenceDiagram ingest_diagram(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("diagram JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dims") || !doc["dims"].is_object())
        throw std::runtime_error("diagram JSON must be an object with a \"dims\" object");
    PersistenceDiagram d;
    d.max_homology_dim = 0;
    for (const auto& [key, value] : doc["dims"].items()) {
        int dim = 0;
        try {
            dim = std::stoi(key);
        } catch (const std::exception&) {
            throw std::runtime_error("diagram JSON has a non-numeric dimension key \"" + key +
                                     "\"");
        }
        if (dim < 0) throw std::runtime_error("diagram JSON has a negative dimension key");
        d.max_homology_dim = std::max(d.max_homology_dim, dim);
        if (!value.is_array())
            throw std::runtime_error("diagram JSON dimension \"" + key + "\" is not an array");
        for (const auto& pt : value) {
            if (!pt.is_array() || pt.size() != 2)
                throw std::runtime_error("diagram JSON point must be a [birth, death] pair");
            PersistencePoint p;
            p.dim = dim;
            p.birth = pt[0].get<double>();
            if (pt[1].is_string()) {
                if (pt[1].get<std::string>() != "inf")
                    throw std::runtime_error("diagram JSON death must be a number or \"inf\"");
                p.death = kInfiniteDeath;
            } else {
                p.death = pt[1].get<double>();
            }
            d.points.push_back(p);
        }
    }
    std::sort(d.points.begin(), d.points.end());
    return d;
}

inline PersistenceDiagram ingest_diagram_file(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return ingest_diagram(in);
}

// Series CSV: `date,dist_dim0,dist_dim1,...`, one row per sample.
inline void emit_series(const DiagramDistanceSeries& s, std::ostream& out) {
    out << "date";
    for (std::size_t dim = 0; dim < s.distances.size(); ++dim) out << ",dist_dim" << dim;
    out << "\n";
    for (std::size_t k = 0; k < s.sample_dates.size(); ++k) {
        out << s.sample_dates[k];
        for (std::size_t dim = 0; dim < s.distances.size(); ++dim)
            out << "," << format_number(s.distances[dim][k]);
        out << "\n";
    }
}

inline void emit_series_file(const DiagramDistanceSeries& s, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    emit_series(s, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline DiagramDistanceSeries ingest_series(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("series CSV is empty");
    const std::vector<std::string> header = detail::split_csv_line(line);
    if (header.empty() || header[0] != "date")
        throw std::runtime_error("series CSV header must start with date");
    DiagramDistanceSeries s;
    s.distances.assign(header.size() - 1, {});
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(line_no) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        s.sample_dates.push_back(fields[0]);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            double value = 0.0;
            if (!detail::parse_full_double(fields[c], value))
                throw std::runtime_error("row " + std::to_string(line_no) + ", column " +
                                         header[c] + ": unparseable number \"" + fields[c] +
                                         "\"");
            s.distances[c - 1].push_back(value);
        }
    }
    return s;
}

inline DiagramDistanceSeries ingest_series_file(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return ingest_series(in);
}

}  // namespace tdanet
