#include "grci/projection.hpp"

#include <stdexcept>

#include "grci/errors.hpp"
#include "grci/spline.hpp"

namespace grci {

std::pair<std::vector<double>, ProjectionVector> dirichlet_project(const Columns& X, Rng& rng) {
    if (X.empty()) throw InputError("dirichlet_project: no columns");
    const std::size_t t = X.size();
    const std::size_t n = X[0].size();

    ProjectionVector w;
    w.weights.resize(t);
    double total = 0.0;
    for (std::size_t j = 0; j < t; ++j) {
        w.weights[j] = rng.exponential();
        total += w.weights[j];
    }
    for (double& v : w.weights) v /= total;

    std::vector<double> proj(n, 0.0);
    for (std::size_t j = 0; j < t; ++j) {
        const double wj = w.weights[j];
        for (std::size_t i = 0; i < n; ++i) proj[i] += wj * X[j][i];
    }
    try {
        proj = normalize(proj).first;
    } catch (const DegenerateColumn&) {
        // constant projection; leave as-is
    }
    return {std::move(proj), std::move(w)};
}

}  // namespace grci
