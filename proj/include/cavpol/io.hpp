#pragma once

// Structured output shared by the CLI commands: a small table abstraction
// with run metadata, serialized to CSV or JSON. Numbers are written with 17
// significant digits (CSV) or shortest-round-trip form (JSON), so re-parsing
// reproduces the doubles bit-exactly; given the same RunSpec and seed the
// emitted bytes are identical across runs.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cavpol::io {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using Cell = std::variant<double, long long, std::string>;

inline std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

// Command invocation descriptor embedded in every output.
struct RunSpec {
    std::string command;
    std::vector<std::pair<std::string, std::string>> options; // insertion order kept
    std::uint64_t seed = 0;
    std::string format = "csv"; // csv | json
    std::string out = "-";      // "-" = stdout

    void set(const std::string& key, const std::string& value) { options.emplace_back(key, value); }
    void set(const std::string& key, double value) { options.emplace_back(key, format_double(value)); }
    void set(const std::string& key, long long value) { options.emplace_back(key, std::to_string(value)); }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != columns.size())
            throw std::invalid_argument("Table: row width does not match column count");
        rows.push_back(std::move(cells));
    }
};

inline constexpr int kSchemaVersion = 1;

inline std::string to_csv(const Table& t, const RunSpec& run) {
    std::ostringstream os;
    os << "# schema_version=" << kSchemaVersion << "\n";
    os << "# command=" << run.command << "\n";
    for (const auto& [k, v] : run.options) os << "# " << k << "=" << v << "\n";
    os << "# seed=" << run.seed << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << cell_to_string(row[i]) << (i + 1 < row.size() ? "," : "\n");
    return os.str();
}

inline std::string to_json(const Table& t, const RunSpec& run) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["run"]["command"] = run.command;
    j["run"]["options"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.options) j["run"]["options"][k] = v;
    j["run"]["seed"] = run.seed;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (std::holds_alternative<double>(cell)) r.push_back(std::get<double>(cell));
            else if (std::holds_alternative<long long>(cell)) r.push_back(std::get<long long>(cell));
            else r.push_back(std::get<std::string>(cell));
        }
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

inline std::string render(const Table& t, const RunSpec& run) {
    if (run.format == "csv") return to_csv(t, run);
    if (run.format == "json") return to_json(t, run);
    throw std::invalid_argument("render: unknown format '" + run.format + "'");
}

inline void write_output(const std::string& content, const std::string& path,
                         std::ostream& console) {
    if (path == "-" || path.empty()) {
        console << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

// --- grids -----------------------------------------------------------------

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linspace: need at least one point");
    if (points == 1) return {lo};
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * double(i) / double(points - 1);
    return g;
}

inline std::vector<double> logspace(double lo, double hi, int points) {
    if (!(lo > 0) || !(hi > 0)) throw std::invalid_argument("logspace: endpoints must be positive");
    if (points < 1) throw std::invalid_argument("logspace: need at least one point");
    if (points == 1) return {lo};
    std::vector<double> g(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(llo + (lhi - llo) * double(i) / double(points - 1));
    return g;
}

// Accepts "a,b,c" (explicit values) or "lo:hi:points" (inclusive linear grid).
inline std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo, hi;
        int points;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
            throw std::invalid_argument("parse_grid: expected lo:hi:points in '" + spec + "'");
        return linspace(lo, hi, points);
    }
    std::istringstream is(spec);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("parse_grid: empty grid spec");
    return out;
}

} // namespace cavpol::io
