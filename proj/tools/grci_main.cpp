#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grci/benchmark.hpp"
#include "grci/errors.hpp"
#include "grci/io.hpp"
#include "grci/metrics.hpp"
#include "grci/pipeline.hpp"
#include "grci/spline.hpp"

namespace {

using namespace grci;

constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

struct CommonOpts {
    double alpha = 0.1;
    int k_mi = 10;
    std::uint64_t seed = 0;
    int max_cond = 3;
    std::string out;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--alpha", o.alpha, "CI test level");
    cmd->add_option("--k", o.k_mi, "neighbors for the MI estimator");
    cmd->add_option("--seed", o.seed, "rng seed");
    cmd->add_option("--max-cond", o.max_cond, "max conditioning set size");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_flag("--json", o.json, "machine-readable output");
}

GrciConfig make_config(const CommonOpts& o) {
    GrciConfig cfg;
    cfg.skeleton.alpha = o.alpha;
    cfg.skeleton.k_mi = o.k_mi;
    cfg.skeleton.max_cond = o.max_cond;
    cfg.ordering.k_mi = o.k_mi;
    cfg.seed = o.seed;
    return cfg;
}

Columns table_feature_columns(const Table& t, int skip = -1) {
    Columns cols;
    for (int j = 0; j < static_cast<int>(t.columns.size()); ++j) {
        if (j != skip) cols.push_back(t.columns[j]);
    }
    return cols;
}

int cmd_direction(const std::string& input, bool pair_file, const CommonOpts& o) {
    std::vector<double> x, y;
    if (pair_file) {
        auto [a, b] = read_pair_file(input);
        x = std::move(a);
        y = std::move(b);
    } else {
        Table t = read_csv_file(input);
        if (t.columns.size() != 2) throw InputError("expected exactly 2 columns");
        x = t.columns[0];
        y = t.columns[1];
    }
    if (x.size() < 100) throw InputError("need at least 100 rows");

    // constant columns are a data degeneracy, not a parse failure
    try {
        normalize(x);
        normalize(y);
    } catch (const DegenerateColumn&) {
        throw;
    }

    GrciConfig cfg = make_config(o);
    ExtractionResult res = extract_errors(Columns{x, y}, Skeleton::complete(2),
                                          combine_seed(o.seed, 0xd1ULL), cfg.ordering);
    bool x_to_y = res.order.front() == 1;
    double gap = std::abs(res.sink_scores.front() -
                          (std::isfinite(res.sink_scores.back()) ? res.sink_scores.back() : 0.0));

    std::ostringstream msg;
    if (o.json) {
        msg << "{\"direction\":\"" << (x_to_y ? "X->Y" : "Y->X")
            << "\",\"sink_score\":" << format_double(res.sink_scores.front())
            << ",\"score_gap\":" << format_double(gap) << ",\"seed\":" << o.seed << "}\n";
    } else {
        msg << (x_to_y ? "X->Y" : "Y->X") << "  (sink MI score "
            << format_double(res.sink_scores.front()) << ", lower is more confident)\n";
    }
    std::cout << msg.str();
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        f << msg.str();
    }
    return 0;
}

int cmd_root_causes(const std::string& input, double holdout, const CommonOpts& o) {
    Table t = read_csv_file(input);
    int dcol = t.find("D");
    if (dcol < 0) throw InputError("input needs a binary column named D");
    std::vector<int> d;
    bool has0 = false, has1 = false;
    for (double v : t.columns[dcol]) {
        if (v != 0.0 && v != 1.0) throw InputError("column D must be 0/1");
        d.push_back(static_cast<int>(v));
        (v == 1.0 ? has1 : has0) = true;
    }
    if (!has0 || !has1) throw DegenerateLabel();

    Columns features = table_feature_columns(t, dcol);
    std::vector<std::string> feature_names;
    for (int j = 0; j < static_cast<int>(t.names.size()); ++j) {
        if (j != dcol) feature_names.push_back(t.names[j]);
    }

    GrciConfig cfg = make_config(o);
    cfg.holdout = holdout;
    GrciOutput res = run_grci(features, d, cfg);

    std::string out = o.out.empty() ? "root_causes.csv" : o.out;
    Table shap_table;
    shap_table.names.push_back("row");
    for (const auto& name : feature_names) shap_table.names.push_back("S." + name);
    shap_table.columns.resize(shap_table.names.size());
    for (std::size_t r = 0; r < res.shapley.values.rows; ++r) {
        shap_table.columns[0].push_back(static_cast<double>(res.test_rows[r]));
        for (std::size_t j = 0; j < res.shapley.values.cols; ++j) {
            shap_table.columns[j + 1].push_back(res.shapley.values.at(r, j));
        }
    }
    write_csv_file(out, shap_table);

    Table rank_table;
    rank_table.names = {"row", "rank", "variable", "shapley"};
    rank_table.columns.resize(4);
    for (std::size_t r = 0; r < res.report.size(); ++r) {
        for (std::size_t k = 0; k < res.report[r].size(); ++k) {
            rank_table.columns[0].push_back(static_cast<double>(res.test_rows[r]));
            rank_table.columns[1].push_back(static_cast<double>(k));
            rank_table.columns[2].push_back(res.report[r][k].variable);
            rank_table.columns[3].push_back(res.report[r][k].value);
        }
    }
    std::string rank_out = out + ".rankings.csv";
    write_csv_file(rank_out, rank_table);

    std::cout << "wrote " << out << " (base " << format_double(res.shapley.base) << ") and "
              << rank_out << "\n";
    return 0;
}

int cmd_extract_errors(const std::string& input, const CommonOpts& o) {
    Table t = read_csv_file(input);
    if (t.columns.size() < 2) throw InputError("need at least 2 numeric columns");
    Columns features = table_feature_columns(t);

    GrciConfig cfg = make_config(o);
    Skeleton skel = skeleton_stable(features, cfg.skeleton, o.seed);
    ExtractionResult res = extract_errors(features, skel, combine_seed(o.seed, 0xee1ULL),
                                          cfg.ordering);

    std::string out = o.out.empty() ? "errors.csv" : o.out;
    std::ofstream f(out);
    if (!f) throw InputError("cannot open " + out);
    f << "# order:";
    for (int v : res.order) f << ' ' << v;
    f << '\n';
    Table err_table;
    for (const auto& name : t.names) err_table.names.push_back("E." + name);
    err_table.columns = res.errors;
    write_csv(f, err_table);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_benchmark(const std::string& suite, int p, std::size_t n, int reps,
                  const CommonOpts& o) {
    BenchmarkConfig cfg;
    cfg.suite = suite;
    cfg.p = p;
    cfg.n = n;
    cfg.reps = reps;
    cfg.seed = o.seed;
    cfg.threads = env_thread_cap();
    cfg.grci = make_config(o);
    auto rows = run_benchmark(cfg);
    std::string out = o.out.empty() ? "benchmark.csv" : o.out;
    std::ofstream f(out);
    if (!f) throw InputError("cannot open " + out);
    write_benchmark_csv(f, rows, o.seed);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root causal inference under the heteroscedastic noise model"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string input;
    bool pair_format = false;
    double holdout = 0.0;
    std::string suite = "rootcause";
    int p = 10;
    std::size_t n = 2000;
    int reps = 1;

    auto* dir = app.add_subcommand("direction", "bivariate causal direction from a 2-column CSV");
    dir->add_option("input", input, "input CSV (columns x,y)")->required();
    dir->add_flag("--pair-file", pair_format, "input is whitespace-separated, no header");
    add_common(dir, opts);

    auto* rc = app.add_subcommand("root-causes", "per-patient Shapley root causes");
    rc->add_option("input", input, "input CSV with feature columns and binary D")->required();
    rc->add_option("--holdout", holdout, "test fraction (default: attribute all rows)");
    add_common(rc, opts);

    auto* ee = app.add_subcommand("extract-errors", "error terms and reverse order");
    ee->add_option("input", input, "input CSV of numeric columns")->required();
    add_common(ee, opts);

    auto* bm = app.add_subcommand("benchmark", "synthetic benchmark suites");
    bm->add_option("--suite", suite, "pairs | rootcause | pnl | pnl-pairs");
    bm->add_option("--p", p, "variable count");
    bm->add_option("--n", n, "sample size");
    bm->add_option("--reps", reps, "replications");
    add_common(bm, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dir->parsed()) return cmd_direction(input, pair_format, opts);
        if (rc->parsed()) return cmd_root_causes(input, holdout, opts);
        if (ee->parsed()) return cmd_extract_errors(input, opts);
        if (bm->parsed()) return cmd_benchmark(suite, p, n, reps, opts);
    } catch (const grci::DegenerateColumn& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const grci::DegenerateLabel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
