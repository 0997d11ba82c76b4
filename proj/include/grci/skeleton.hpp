#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grci/projection.hpp"

namespace grci {

// Undirected adjacency over p variables; symmetric, no self-edges.
struct Skeleton {
    int p = 0;
    std::vector<bool> adj;  // p*p, row-major

    explicit Skeleton(int p_ = 0) : p(p_), adj(static_cast<std::size_t>(p_) * p_, false) {}

    bool adjacent(int i, int j) const { return adj[static_cast<std::size_t>(i) * p + j]; }
    void set_edge(int i, int j, bool on) {
        adj[static_cast<std::size_t>(i) * p + j] = on;
        adj[static_cast<std::size_t>(j) * p + i] = on;
    }
    std::vector<int> neighbors(int i) const;
    int edge_count() const;

    static Skeleton complete(int p);

    // One "i j" pair per line, 0-indexed, i < j.
    std::string to_edge_list() const;
    static Skeleton from_edge_list(const std::string& text, int p);
};

struct SkeletonConfig {
    double alpha = 0.1;
    int max_cond = 3;
    int permutations = 200;
    int k_mi = 10;
};

// Order-independent PC-stable skeleton discovery. CI-test randomness is keyed
// by (unordered pair, conditioning set) so relabeling variables permutes the
// output exactly.
Skeleton skeleton_stable(const Columns& X, const SkeletonConfig& cfg, std::uint64_t seed);

}  // namespace grci
