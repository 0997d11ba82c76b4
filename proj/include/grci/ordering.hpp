#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "grci/projection.hpp"
#include "grci/skeleton.hpp"

namespace grci {

struct ScoreTable {
    std::vector<double> scores;  // per variable; +inf until first evaluation

    explicit ScoreTable(int p)
        : scores(p, std::numeric_limits<double>::infinity()) {}
};

struct ExtractionResult {
    Columns errors;                   // column i = recovered error of variable i
    std::vector<int> order;           // reverse partial order, sinks first
    std::vector<double> sink_scores;  // winning score at each step
    std::size_t partial_out_calls = 0;
};

struct OrderingConfig {
    int k_mi = 10;
    bool rescore_all = false;  // reference mode: re-score all of M each round
};

// One round of sink selection: score every variable in U as the max mutual
// information between its residual and each current neighbor, then return the
// member of M with the smallest cached score. Ties break to the lowest index;
// neighbor-free variables score -inf.
int find_sink(const std::vector<int>& M, const std::vector<int>& U, ScoreTable& T,
              const Skeleton& skel, const Columns& X, std::uint64_t seed,
              const OrderingConfig& cfg, std::size_t* po_calls = nullptr);

// Iteratively removes sinks, partials each one out against the neighbors it
// had at removal time, and deletes its edges. Scores are re-computed only for
// former neighbors of the removed sink unless cfg.rescore_all is set.
ExtractionResult extract_errors(const Columns& X, Skeleton skel, std::uint64_t seed,
                                const OrderingConfig& cfg = {});

enum class Direction { XtoY, YtoX };

// Bivariate mode: assume the edge exists and let the sink search pick the effect.
Direction causal_direction(const std::vector<double>& x, const std::vector<double>& y,
                           std::uint64_t seed, const OrderingConfig& cfg = {});

}  // namespace grci
