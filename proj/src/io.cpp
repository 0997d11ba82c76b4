#include "grci/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grci/errors.hpp"

namespace grci {

int Table::find(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw InputError("line " + std::to_string(line_no) + ": bad numeric cell '" + cell + "'");
    }
    return v;
}

}  // namespace

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (const auto& name : split_csv_line(line)) t.names.push_back(name);
    if (t.names.empty()) throw InputError("CSV header has no columns");
    t.columns.resize(t.names.size());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.names.size()) {
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(t.names.size()) + " cells, got " +
                             std::to_string(cells.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            t.columns[j].push_back(parse_cell(cells[j], line_no));
        }
    }
    return t;
}

Table read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_csv(in);
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t j = 0; j < table.names.size(); ++j) {
        out << (j ? "," : "") << table.names[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            out << (j ? "," : "") << format_double(table.columns[j][i]);
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    write_csv(out, table);
}

std::pair<std::vector<double>, std::vector<double>> read_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<double> x, y;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        double a, b;
        if (!(is >> a >> b)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw InputError("bad pair-file line: '" + line + "'");
        }
        if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("non-finite pair value");
        x.push_back(a);
        y.push_back(b);
    }
    return {std::move(x), std::move(y)};
}

std::map<int, double> read_pair_weights(const std::string& path) {
    Table t = read_csv_file(path);
    int pc = t.find("pair"), wc = t.find("weight");
    if (pc < 0 || wc < 0) throw InputError("pair weights CSV needs `pair` and `weight` columns");
    std::map<int, double> out;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        out[static_cast<int>(t.columns[pc][i])] = t.columns[wc][i];
    }
    return out;
}

std::string spec_to_json(const SemSpec& spec) {
    nlohmann::json j;
    j["p"] = spec.p;
    j["dag"] = spec.dag;
    j["beta1"] = spec.beta1;
    j["beta2"] = spec.beta2;
    j["f_choice"] = spec.f_choice;
    j["g_choice"] = spec.g_choice;
    j["h_choice"] = spec.h_choice;
    std::vector<int> dists;
    for (auto d : spec.error_dist) dists.push_back(static_cast<int>(d));
    j["error_dist"] = dists;
    j["permutation"] = spec.permutation;
    j["target"] = spec.target;
    j["label_intercept"] = spec.label_intercept;
    j["label_gain"] = spec.label_gain;
    j["pnl"] = spec.pnl;
    return j.dump(2);
}

SemSpec spec_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SemSpec s;
    s.p = j.at("p").get<int>();
    s.dag = j.at("dag").get<std::vector<bool>>();
    s.beta1 = j.at("beta1").get<std::vector<double>>();
    s.beta2 = j.at("beta2").get<std::vector<double>>();
    s.f_choice = j.at("f_choice").get<std::vector<int>>();
    s.g_choice = j.at("g_choice").get<std::vector<int>>();
    s.h_choice = j.at("h_choice").get<std::vector<int>>();
    for (int d : j.at("error_dist").get<std::vector<int>>()) {
        s.error_dist.push_back(static_cast<ErrorDist>(d));
    }
    s.permutation = j.at("permutation").get<std::vector<int>>();
    s.target = j.at("target").get<int>();
    s.label_intercept = j.at("label_intercept").get<double>();
    s.label_gain = j.at("label_gain").get<double>();
    s.pnl = j.at("pnl").get<bool>();
    return s;
}

}  // namespace grci
