#include "grci/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <numeric>
#include <ostream>
#include <span>

#include "grci/errors.hpp"
#include "grci/metrics.hpp"
#include "grci/simgen.hpp"

namespace grci {

int env_thread_cap() {
    const char* env = std::getenv("HNM_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v > 0 ? v : 1;
}

namespace {

struct PairCell {
    const char* name;
    PairFamily family;
    NoiseClass noise;
};

constexpr PairCell kPairCells[] = {
    {"lingam_nongaussian", PairFamily::LiNGAM, NoiseClass::NonGaussian},
    {"anm_nongaussian", PairFamily::ANM, NoiseClass::NonGaussian},
    {"anm_gaussian", PairFamily::ANM, NoiseClass::Gaussian},
    {"hnm_nongaussian", PairFamily::HNM, NoiseClass::NonGaussian},
    {"hnm_gaussian", PairFamily::HNM, NoiseClass::Gaussian},
};

constexpr PairCell kPnlCells[] = {
    {"pnl_nongaussian", PairFamily::PNL, NoiseClass::NonGaussian},
};

bool direction_rep(const PairCell& cell, std::size_t n, std::uint64_t rep_seed,
                   const GrciConfig& grci) {
    Rng rng(rep_seed);
    PairSample pair = sample_pair(cell.family, n, rng, cell.noise);
    bool flipped = rng.bernoulli(0.5);
    const auto& a = flipped ? pair.y : pair.x;
    const auto& b = flipped ? pair.x : pair.y;
    Direction dir = causal_direction(a, b, combine_seed(rep_seed, 0xd1ULL), grci.ordering);
    Direction truth = flipped ? Direction::YtoX : Direction::XtoY;
    return dir == truth;
}

// Runs f(rep) for rep in [0, reps) over a bounded worker pool, results ordered.
template <class F>
auto parallel_reps(int reps, int threads, F&& f) {
    using R = decltype(f(0));
    std::vector<R> out(reps);
    if (threads <= 1) {
        for (int r = 0; r < reps; ++r) out[r] = f(r);
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= reps) return;
            out[r] = f(r);
        }
    };
    std::vector<std::future<void>> pool;
    for (int t = 0; t < std::min(threads, reps); ++t) {
        pool.push_back(std::async(std::launch::async, worker));
    }
    for (auto& fu : pool) fu.get();
    return out;
}

}  // namespace

RootCauseRepResult rootcause_rep(int p, std::size_t n, std::uint64_t rep_seed,
                                 const GrciConfig& grci, bool pnl) {
    Rng rng(rep_seed);
    SemSpec spec = sample_spec(p, 2.0, rng, NoiseClass::NonGaussian, pnl);
    tune_label_intercept(spec, rng);
    GeneratedData data = generate(spec, n, rng);

    Columns features(data.features.cols);
    for (std::size_t j = 0; j < data.features.cols; ++j) {
        features[j].resize(n);
        for (std::size_t i = 0; i < n; ++i) features[j][i] = data.features.at(i, j);
    }

    GrciConfig cfg = grci;
    cfg.seed = combine_seed(rep_seed, 0x6c1ULL);
    GrciOutput out = run_grci(features, data.d, cfg);

    ShapleyMatrix truth =
        ground_truth_shapley(spec, data.true_errors, rng);

    RootCauseRepResult res;
    res.rbo = rbo(ranked_patients(out.shapley.values, truth.values));
    res.mse = shapley_mse(out.shapley.values, truth.values);
    res.prevalence = std::accumulate(data.d.begin(), data.d.end(), 0.0) / n;
    return res;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg) {
    std::vector<BenchmarkRow> rows;
    if (cfg.reps < 1) throw InputError("reps must be >= 1");

    if (cfg.suite == "pairs" || cfg.suite == "pnl-pairs") {
        auto cells = cfg.suite == "pairs" ? std::span<const PairCell>(kPairCells)
                                          : std::span<const PairCell>(kPnlCells);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto correct = parallel_reps(cfg.reps, cfg.threads, [&](int r) {
                std::uint64_t rep_seed = combine_seed(cfg.seed, combine_seed(c, r));
                return direction_rep(cells[c], cfg.n, rep_seed, cfg.grci) ? 1.0 : 0.0;
            });
            std::vector<PairDecision> decisions;
            for (int r = 0; r < cfg.reps; ++r) {
                rows.push_back({cells[c].name, r, "correct", correct[r]});
                decisions.push_back({correct[r] > 0.5, 1.0});
            }
            rows.push_back({cells[c].name, -1, "weighted_accuracy",
                            weighted_pair_accuracy(decisions)});
        }
    } else if (cfg.suite == "rootcause" || cfg.suite == "pnl") {
        bool pnl = cfg.suite == "pnl";
        std::string cell = (pnl ? "pnl_p" : "hnm_p") + std::to_string(cfg.p) + "_n" +
                           std::to_string(cfg.n);
        auto results = parallel_reps(cfg.reps, cfg.threads, [&](int r) {
            std::uint64_t rep_seed = combine_seed(cfg.seed, combine_seed(0x5eedULL, r));
            return rootcause_rep(cfg.p, cfg.n, rep_seed, cfg.grci, pnl);
        });
        double rbo_sum = 0.0, mse_sum = 0.0;
        for (int r = 0; r < cfg.reps; ++r) {
            rows.push_back({cell, r, "rbo", results[r].rbo});
            rows.push_back({cell, r, "mse", results[r].mse});
            rows.push_back({cell, r, "prevalence", results[r].prevalence});
            rbo_sum += results[r].rbo;
            mse_sum += results[r].mse;
        }
        rows.push_back({cell, -1, "mean_rbo", rbo_sum / cfg.reps});
        rows.push_back({cell, -1, "mean_mse", mse_sum / cfg.reps});
    } else {
        throw InputError("unknown suite: " + cfg.suite);
    }
    return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows,
                         std::uint64_t seed) {
    out << "cell,rep,metric,value,seed\n";
    for (const auto& r : rows) {
        out << r.cell << ',' << r.rep << ',' << r.metric << ',' << format_double(r.value)
            << ',' << seed << '\n';
    }
}

}  // namespace grci
