#include "grci/skeleton.hpp"

#include <algorithm>
#include <sstream>

#include "grci/ci.hpp"
#include "grci/errors.hpp"
#include "grci/spline.hpp"

namespace grci {

std::vector<int> Skeleton::neighbors(int i) const {
    std::vector<int> out;
    for (int j = 0; j < p; ++j) {
        if (j != i && adjacent(i, j)) out.push_back(j);
    }
    return out;
}

int Skeleton::edge_count() const {
    int c = 0;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (adjacent(i, j)) ++c;
        }
    }
    return c;
}

Skeleton Skeleton::complete(int p) {
    Skeleton s(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) s.set_edge(i, j, true);
    }
    return s;
}

std::string Skeleton::to_edge_list() const {
    std::ostringstream os;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            if (adjacent(i, j)) os << i << ' ' << j << '\n';
        }
    }
    return os.str();
}

Skeleton Skeleton::from_edge_list(const std::string& text, int p) {
    Skeleton s(p);
    std::istringstream is(text);
    int i, j;
    while (is >> i >> j) {
        if (i < 0 || j < 0 || i >= p || j >= p || i == j) {
            throw InputError("edge list entry out of range");
        }
        s.set_edge(i, j, true);
    }
    return s;
}

namespace {

std::uint64_t test_key(int i, int j, const std::vector<int>& cond) {
    std::uint64_t h = combine_seed(static_cast<std::uint64_t>(std::min(i, j)),
                                   static_cast<std::uint64_t>(std::max(i, j)) + 0x517cc1b7ULL);
    for (int w : cond) h = combine_seed(h, static_cast<std::uint64_t>(w) + 0x2545f491ULL);
    return h;
}

// Enumerates size-ell subsets of `pool` in lexicographic order.
bool next_combination(std::vector<int>& idx, int pool_size) {
    int ell = static_cast<int>(idx.size());
    for (int t = ell - 1; t >= 0; --t) {
        if (idx[t] < pool_size - (ell - t)) {
            ++idx[t];
            for (int u = t + 1; u < ell; ++u) idx[u] = idx[u - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Skeleton skeleton_stable(const Columns& X, const SkeletonConfig& cfg, std::uint64_t seed) {
    const int p = static_cast<int>(X.size());
    Columns Xn(p);
    std::vector<bool> degenerate(p, false);
    for (int i = 0; i < p; ++i) {
        try {
            Xn[i] = normalize(X[i]).first;
        } catch (const DegenerateColumn&) {
            Xn[i] = X[i];
            degenerate[i] = true;
        }
    }

    Skeleton skel = Skeleton::complete(p);
    for (int i = 0; i < p; ++i) {
        if (degenerate[i]) {
            for (int j = 0; j < p; ++j) {
                if (j != i) skel.set_edge(i, j, false);
            }
        }
    }

    for (int ell = 0; ell <= cfg.max_cond; ++ell) {
        // stable variant: all tests at this level consult the same snapshot
        std::vector<std::vector<int>> snapshot(p);
        bool any_big_enough = false;
        for (int i = 0; i < p; ++i) {
            snapshot[i] = skel.neighbors(i);
            if (static_cast<int>(snapshot[i].size()) - 1 >= ell) any_big_enough = true;
        }
        if (!any_big_enough && ell > 0) break;

        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                if (i == j || !skel.adjacent(i, j)) continue;
                std::vector<int> pool;
                for (int w : snapshot[i]) {
                    if (w != j) pool.push_back(w);
                }
                if (static_cast<int>(pool.size()) < ell) continue;

                std::vector<int> pick(ell);
                for (int t = 0; t < ell; ++t) pick[t] = t;
                bool more = ell <= static_cast<int>(pool.size());
                bool removed = false;
                while (more && !removed) {
                    std::vector<int> cond(ell);
                    for (int t = 0; t < ell; ++t) cond[t] = pool[pick[t]];
                    Columns W;
                    for (int w : cond) W.push_back(Xn[w]);

                    // canonical argument order keeps the test symmetric in (i,j)
                    int a = std::min(i, j), b = std::max(i, j);
                    Rng test_rng(combine_seed(seed, test_key(i, j, cond)));
                    CiResult r = ci_test(Xn[a], Xn[b], W, cfg.alpha, cfg.permutations,
                                         test_rng, cfg.k_mi);
                    if (r.independent) {
                        skel.set_edge(i, j, false);
                        removed = true;
                    }
                    if (ell == 0) break;
                    more = next_combination(pick, static_cast<int>(pool.size()));
                }
            }
        }
    }
    return skel;
}

}  // namespace grci
