#include "grci/partial_out.hpp"

#include <cmath>
#include <numeric>

#include "grci/errors.hpp"

namespace grci {

namespace {
constexpr double kMadFloor = 1e-6;
}

PartialOutFit partial_out(const Columns& V, const std::vector<double>& xi, Rng& rng) {
    const std::size_t n = xi.size();
    PartialOutFit out;

    std::vector<double> x;
    try {
        x = normalize(xi).first;
    } catch (const DegenerateColumn&) {
        out.errors.assign(n, 0.0);
        out.degenerate = true;
        return out;
    }

    if (V.empty()) {
        double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        double mad = 0.0;
        for (double v : x) mad += std::abs(v - mean);
        mad = std::max(mad / n, kMadFloor);
        out.errors.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.errors[i] = (x[i] - mean) / mad;
        return out;
    }

    auto [proj, w] = dirichlet_project(V, rng);
    out.projection = std::move(w);

    out.mean_fit = fit_spline_loocv(proj, x);

    // stage-2 target uses the validation-fold predictions, not the full fit
    std::vector<double> abs_resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        abs_resid[i] = std::abs(x[i] - out.mean_fit.loo_predictions[i]);
    }
    out.mad_fit = fit_spline_loocv(proj, abs_resid);

    out.errors.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sigma = std::max(out.mad_fit.fitted[i], kMadFloor);
        out.errors[i] = (x[i] - out.mean_fit.fitted[i]) / sigma;
    }
    return out;
}

}  // namespace grci
