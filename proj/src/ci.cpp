#include "grci/ci.hpp"

#include <cmath>
#include <numeric>

#include "grci/errors.hpp"
#include "grci/spline.hpp"

namespace grci {

std::vector<double> residualize(const std::vector<double>& y, const Columns& W, Rng& rng) {
    std::vector<double> yn = normalize(y).first;
    if (W.empty()) {
        double mean = std::accumulate(yn.begin(), yn.end(), 0.0) / yn.size();
        for (double& v : yn) v -= mean;
        return yn;
    }
    auto [proj, w] = dirichlet_project(W, rng);
    FittedCurve fit = fit_spline_loocv(proj, yn);
    std::vector<double> res(yn.size());
    for (std::size_t i = 0; i < yn.size(); ++i) res[i] = yn[i] - fit.loo_predictions[i];
    return res;
}

namespace {

std::vector<double> residual_on_proj(const std::vector<double>& y,
                                     const std::vector<double>& proj) {
    std::vector<double> yn = normalize(y).first;
    FittedCurve fit = fit_spline_loocv(proj, yn);
    for (std::size_t i = 0; i < yn.size(); ++i) yn[i] -= fit.loo_predictions[i];
    return yn;
}

}  // namespace

CiResult ci_test(const std::vector<double>& xi, const std::vector<double>& xj,
                 const Columns& W, double alpha, int B, Rng& rng, int k) {
    // one projection and one jitter seed shared by both sides, and the
    // permuted side picked by content, so swapping xi and xj changes nothing
    std::vector<double> ri, rj;
    try {
        if (W.empty()) {
            ri = residualize(xi, W, rng);
            rj = residualize(xj, W, rng);
        } else {
            auto [proj, w] = dirichlet_project(W, rng);
            ri = residual_on_proj(xi, proj);
            rj = residual_on_proj(xj, proj);
        }
    } catch (const DegenerateColumn&) {
        return CiResult{0.0, 1.0, true};
    }

    std::uint64_t jitter_seed = rng.next_u64();
    std::vector<int> rank_i = jittered_ranks(ri, jitter_seed);
    std::vector<int> rank_j = jittered_ranks(rj, jitter_seed);
    double stat = ksg_mi_ranked(rank_i, rank_j, k);

    Rng perm = rng.split(0x9eULL);
    std::vector<int>& shuffled = hash_doubles(ri) > hash_doubles(rj) ? rank_i : rank_j;
    const std::vector<int>& fixed = (&shuffled == &rank_i) ? rank_j : rank_i;
    int exceed = 0;
    for (int b = 0; b < B; ++b) {
        perm.shuffle(shuffled);
        if (ksg_mi_ranked(fixed, shuffled, k) >= stat) ++exceed;
    }
    double p = (1.0 + exceed) / (1.0 + B);
    return CiResult{stat, p, p >= alpha};
}

}  // namespace grci
