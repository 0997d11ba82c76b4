#pragma once

#include <cstdint>
#include <string>

#include "grci/io.hpp"
#include "grci/pipeline.hpp"

namespace grci {

struct BenchmarkConfig {
    std::string suite = "rootcause";  // pairs | rootcause | pnl
    int p = 10;
    std::size_t n = 2000;
    int reps = 50;
    std::uint64_t seed = 0;
    int threads = 1;  // HNM_THREADS caps the worker pool
    GrciConfig grci;
};

struct BenchmarkRow {
    std::string cell;
    int rep;  // -1 marks the cell summary row
    std::string metric;
    double value;
};

// Per-rep rows plus one summary row per (cell, metric).
std::vector<BenchmarkRow> run_benchmark(const BenchmarkConfig& cfg);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows,
                         std::uint64_t seed);

struct RootCauseRepResult {
    double rbo = 0.0;
    double mse = 0.0;
    double prevalence = 0.0;
};

// One replication of the synthetic root-cause protocol (exposed for the
// acceptance suite).
RootCauseRepResult rootcause_rep(int p, std::size_t n, std::uint64_t rep_seed,
                                 const GrciConfig& grci, bool pnl);

int env_thread_cap();

}  // namespace grci
