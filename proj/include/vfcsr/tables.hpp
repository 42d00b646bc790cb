#ifndef VFCSR_TABLES_HPP
#define VFCSR_TABLES_HPP

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "register.hpp"
#include "search.hpp"

// CSV forms: the sequence layout (one row per coordinate stream, one column
// per time step) and the (N'; x, y, z, t) table.

namespace vfcsr {

struct csv_row {
    std::string label;
    std::vector<std::string> cells;

    friend bool operator==(const csv_row&, const csv_row&) = default;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

/// Rows a_j then m_k_j (k slow, j fast); column i is the state after i transitions.
inline std::vector<csv_row> sequence_rows(const run_result& res, const ground_params& g) {
    std::vector<csv_row> rows;
    const std::size_t len = res.outputs.size();
    for (int j = 0; j < g.n(); ++j) {
        csv_row row{"a_" + std::to_string(j), {}};
        for (std::size_t i = 0; i < len; ++i) row.cells.push_back(std::to_string(res.outputs.digit(i, j)));
        rows.push_back(std::move(row));
    }
    for (int k = 0; k < g.d(); ++k)
        for (int j = 0; j < g.n(); ++j) {
            csv_row row{"m_" + std::to_string(k) + "_" + std::to_string(j), {}};
            for (std::size_t i = 0; i < res.memory_trace.size(); ++i) row.cells.push_back(res.memory_trace[i].at(k, j).str());
            rows.push_back(std::move(row));
        }
    return rows;
}

/// Header "stream,0,1,...", then one row per stream. An empty run writes only the header.
inline void write_sequence_csv(std::ostream& os, const run_result& res, const ground_params& g) {
    const std::size_t len = res.outputs.size();
    os << "stream";
    for (std::size_t i = 0; i < len; ++i) os << ',' << i;
    os << '\n';
    if (len == 0) return;
    for (const auto& row : sequence_rows(res, g)) {
        os << row.label;
        for (const auto& c : row.cells) os << ',' << c;
        os << '\n';
    }
}

/// Parses the layout written by write_sequence_csv (header row skipped).
inline std::vector<csv_row> read_sequence_csv(std::istream& is) {
    std::vector<csv_row> rows;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (header) {
            header = false;
            if (cells.empty() || cells[0] != "stream") throw error(errc::invalid_argument, "sequence CSV must start with a \"stream\" header");
            continue;
        }
        csv_row row{cells.front(), {cells.begin() + 1, cells.end()}};
        rows.push_back(std::move(row));
    }
    if (header) throw error(errc::invalid_argument, "sequence CSV is empty");
    return rows;
}

/// Header "N_prime,x,y,z,t", one row per table entry.
inline std::vector<table1_row> read_table1_csv(std::istream& is) {
    std::vector<table1_row> rows;
    std::string line;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto cells = split_csv_line(line);
        if (cells.size() != 5) throw error(errc::invalid_argument, "table row needs 5 fields: " + line);
        try {
            rows.push_back({std::stoll(cells[0]), std::stoll(cells[1]), std::stoll(cells[2]), std::stoll(cells[3]),
                            std::stoll(cells[4])});
        } catch (const std::logic_error&) {
            throw error(errc::invalid_argument, "non-integer field in table row: " + line);
        }
    }
    return rows;
}

} // namespace vfcsr

#endif // VFCSR_TABLES_HPP
