#include "grci/mi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grci/errors.hpp"

namespace grci {

double digamma(double x) {
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return result;
}

std::vector<int> jittered_ranks(const std::vector<double>& v, std::uint64_t seed_base) {
    const std::size_t n = v.size();
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double range = *mx - *mn;
    Rng jr(combine_seed(seed_base, hash_doubles(v)));
    std::vector<double> jittered(n);
    double mag = (range > 0 ? range : 1.0) * 1e-10;
    for (std::size_t i = 0; i < n; ++i) jittered[i] = v[i] + mag * jr.uniform();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return jittered[a] < jittered[b]; });
    std::vector<int> rank(n);
    for (std::size_t r = 0; r < n; ++r) rank[idx[r]] = static_cast<int>(r);
    return rank;
}

namespace {

// Bucket grid over rank space for Chebyshev k-NN queries.
struct RankGrid {
    int n = 0;
    int cell = 1;
    int ncells = 1;
    std::vector<std::vector<int>> buckets;

    RankGrid(const std::vector<int>& rx, const std::vector<int>& ry, int k) {
        n = static_cast<int>(rx.size());
        cell = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(k) * n) / 2.0));
        ncells = (n + cell - 1) / cell;
        buckets.resize(static_cast<std::size_t>(ncells) * ncells);
        for (int i = 0; i < n; ++i) {
            buckets[bucket_of(rx[i], ry[i])].push_back(i);
        }
    }

    std::size_t bucket_of(int x, int y) const {
        return static_cast<std::size_t>(x / cell) * ncells + y / cell;
    }
};

// Distance (Chebyshev, rank units) to the k-th nearest neighbor of point i.
int kth_distance(const RankGrid& g, const std::vector<int>& rx, const std::vector<int>& ry,
                 int i, int k) {
    const int cx = rx[i] / g.cell, cy = ry[i] / g.cell;
    std::vector<int> best;  // max-heap of the k smallest distances
    best.reserve(k + 1);
    for (int ring = 0;; ++ring) {
        if (static_cast<int>(best.size()) == k && ring > 0) {
            int lb = (ring - 1) * g.cell;  // min distance achievable in this ring
            if (best.front() <= lb) break;
        }
        int x0 = cx - ring, x1 = cx + ring, y0 = cy - ring, y1 = cy + ring;
        if (x1 < 0 || y1 < 0 || x0 >= g.ncells || y0 >= g.ncells) {
            if (static_cast<int>(best.size()) == k) break;
        }
        bool any = false;
        for (int bx = std::max(0, x0); bx <= std::min(g.ncells - 1, x1); ++bx) {
            for (int by = std::max(0, y0); by <= std::min(g.ncells - 1, y1); ++by) {
                if (ring > 0 && bx != x0 && bx != x1 && by != y0 && by != y1) continue;
                any = true;
                for (int j : g.buckets[static_cast<std::size_t>(bx) * g.ncells + by]) {
                    if (j == i) continue;
                    int d = std::max(std::abs(rx[j] - rx[i]), std::abs(ry[j] - ry[i]));
                    if (static_cast<int>(best.size()) < k) {
                        best.push_back(d);
                        std::push_heap(best.begin(), best.end());
                    } else if (d < best.front()) {
                        std::pop_heap(best.begin(), best.end());
                        best.back() = d;
                        std::push_heap(best.begin(), best.end());
                    }
                }
            }
        }
        if (!any && ring > g.ncells) break;  // grid exhausted
    }
    return best.front();
}

}  // namespace

double ksg_mi_ranked(const std::vector<int>& rx, const std::vector<int>& ry, int k) {
    const int n = static_cast<int>(rx.size());
    RankGrid grid(rx, ry, k);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        int eps = kth_distance(grid, rx, ry, i, k);
        // margins are permutations of 0..n-1, so strict-ball counts are arithmetic
        int lo_x = std::max(0, rx[i] - eps + 1), hi_x = std::min(n - 1, rx[i] + eps - 1);
        int lo_y = std::max(0, ry[i] - eps + 1), hi_y = std::min(n - 1, ry[i] + eps - 1);
        int nx = hi_x - lo_x;  // excludes the point itself
        int ny = hi_y - lo_y;
        acc += digamma(nx + 1) + digamma(ny + 1);
    }
    return digamma(k) + digamma(n) - acc / n;
}

MiEstimate knn_mi(const std::vector<double>& a, const std::vector<double>& b, int k,
                  std::uint64_t seed_base) {
    if (a.size() != b.size()) throw InputError("knn_mi: length mismatch");
    if (a.size() <= static_cast<std::size_t>(k)) throw InsufficientSamples("knn_mi: n <= k");
    std::vector<int> rx = jittered_ranks(a, seed_base);
    std::vector<int> ry = jittered_ranks(b, seed_base);
    return MiEstimate{ksg_mi_ranked(rx, ry, k), k};
}

}  // namespace grci
