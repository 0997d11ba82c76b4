#include "grci/ordering.hpp"

#include <algorithm>

#include "grci/errors.hpp"
#include "grci/mi.hpp"
#include "grci/partial_out.hpp"
#include "grci/spline.hpp"

namespace grci {

namespace {

// Streams are keyed by (variable, current neighbor set) so a re-score with an
// unchanged neighborhood reproduces the cached value exactly.
std::uint64_t score_key(std::uint64_t seed, int var, const std::vector<int>& nbrs) {
    std::uint64_t h = combine_seed(seed, static_cast<std::uint64_t>(var) + 0x9e37ULL);
    for (int j : nbrs) h = combine_seed(h, static_cast<std::uint64_t>(j) + 0x85ebULL);
    return h;
}

}  // namespace

int find_sink(const std::vector<int>& M, const std::vector<int>& U, ScoreTable& T,
              const Skeleton& skel, const Columns& X, std::uint64_t seed,
              const OrderingConfig& cfg, std::size_t* po_calls) {
    if (M.size() == 1) return M.front();

    for (int i : U) {
        std::vector<int> nbrs = skel.neighbors(i);
        if (nbrs.empty()) {
            T.scores[i] = -std::numeric_limits<double>::infinity();
            continue;
        }
        std::uint64_t key = score_key(seed, i, nbrs);
        Rng rng(key);
        Columns V;
        for (int j : nbrs) V.push_back(X[j]);
        PartialOutFit fit = partial_out(V, X[i], rng);
        if (po_calls) ++*po_calls;
        double worst = -std::numeric_limits<double>::infinity();
        for (int j : nbrs) {
            double mi = knn_mi(X[j], fit.errors, cfg.k_mi, key).value;
            worst = std::max(worst, mi);
        }
        T.scores[i] = worst;
    }

    int best = M.front();
    for (int i : M) {
        if (T.scores[i] < T.scores[best]) best = i;
    }
    return best;
}

ExtractionResult extract_errors(const Columns& X, Skeleton skel, std::uint64_t seed,
                                const OrderingConfig& cfg) {
    const int p = static_cast<int>(X.size());
    ExtractionResult res;
    res.errors.resize(p);

    Columns Xn(p);
    for (int i = 0; i < p; ++i) {
        try {
            Xn[i] = normalize(X[i]).first;
        } catch (const DegenerateColumn&) {
            Xn[i] = X[i];
        }
    }

    std::vector<int> M(p);
    for (int i = 0; i < p; ++i) M[i] = i;
    std::vector<int> U = M;
    ScoreTable T(p);

    while (!M.empty()) {
        int S = find_sink(M, cfg.rescore_all ? M : U, T, skel, Xn, seed, cfg,
                          &res.partial_out_calls);
        M.erase(std::find(M.begin(), M.end(), S));
        res.order.push_back(S);
        res.sink_scores.push_back(T.scores[S]);

        std::vector<int> nbrs = skel.neighbors(S);
        Columns V;
        for (int j : nbrs) V.push_back(Xn[j]);
        Rng rng(score_key(seed, S, nbrs));
        PartialOutFit fit = partial_out(V, Xn[S], rng);
        ++res.partial_out_calls;
        res.errors[S] = std::move(fit.errors);

        U.clear();
        for (int j : nbrs) {
            if (std::find(M.begin(), M.end(), j) != M.end()) U.push_back(j);
        }
        for (int j : nbrs) skel.set_edge(S, j, false);
    }
    return res;
}

Direction causal_direction(const std::vector<double>& x, const std::vector<double>& y,
                           std::uint64_t seed, const OrderingConfig& cfg) {
    if (x.size() < 100 || x.size() != y.size()) {
        throw InsufficientSamples("causal_direction needs n >= 100");
    }
    Columns X{x, y};
    ExtractionResult res = extract_errors(X, Skeleton::complete(2), seed, cfg);
    return res.order.front() == 1 ? Direction::XtoY : Direction::YtoX;
}

}  // namespace grci
