#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "grci/projection.hpp"
#include "grci/simgen.hpp"

namespace grci {

struct Table {
    std::vector<std::string> names;
    Columns columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
    int find(const std::string& name) const;  // -1 when absent
};

// Shortest decimal that round-trips the IEEE-754 value.
std::string format_double(double v);

// Comma-separated, header row required, every cell numeric.
// Throws InputError on malformed input (ragged rows, non-numeric cells, NaN).
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);
void write_csv(std::ostream& out, const Table& table);
void write_csv_file(const std::string& path, const Table& table);

// Two-column whitespace-separated pair file (no header).
std::pair<std::vector<double>, std::vector<double>> read_pair_file(const std::string& path);

// Pair metadata CSV with columns `pair` and `weight`.
std::map<int, double> read_pair_weights(const std::string& path);

std::string spec_to_json(const SemSpec& spec);
SemSpec spec_from_json(const std::string& text);

}  // namespace grci
