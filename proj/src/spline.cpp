#include "grci/spline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace grci {

std::pair<std::vector<double>, AffineScaler> normalize(const std::vector<double>& column) {
    if (column.size() < 2) throw DegenerateColumn("need at least 2 values");
    auto [mn_it, mx_it] = std::minmax_element(column.begin(), column.end());
    double mn = *mn_it, mx = *mx_it;
    if (!(mx > mn)) throw DegenerateColumn();
    AffineScaler scaler{mn, 1.0 / (mx - mn)};
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) out[i] = scaler.apply(column[i]);
    return {std::move(out), scaler};
}

std::vector<int> knot_grid(std::size_t n) {
    if (n < 40) return {2};
    double hi = std::sqrt(static_cast<double>(n) / 10.0);
    std::vector<int> grid;
    for (int i = 0; i < 10; ++i) {
        double v = 2.0 + (hi - 2.0) * i / 9.0;
        int m = static_cast<int>(std::lround(v));
        m = std::max(2, m);
        if (grid.empty() || grid.back() != m) grid.push_back(m);
    }
    return grid;
}

SplineBasis SplineBasis::equispaced(int m) {
    SplineBasis b;
    b.knot_count = m;
    b.knots.resize(m - 1);
    for (int j = 0; j + 1 < m; ++j) b.knots[j] = static_cast<double>(j) / (m - 1);
    return b;
}

void SplineBasis::features(double x, double* out) const {
    out[0] = 1.0;
    for (std::size_t j = 0; j < knots.size(); ++j) {
        out[j + 1] = std::max(0.0, x - knots[j]);
    }
}

double FittedCurve::predict(double x) const {
    std::vector<double> f(basis.knot_count);
    basis.features(x, f.data());
    double s = 0.0;
    for (int j = 0; j < basis.knot_count; ++j) s += coefficients[j] * f[j];
    return s;
}

FittedCurve fit_spline_m(const std::vector<double>& x, const std::vector<double>& y, int m,
                         std::optional<double> fixed_ridge) {
    const auto n = static_cast<Eigen::Index>(x.size());
    SplineBasis basis = SplineBasis::equispaced(m);

    Eigen::MatrixXd X(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<double> f(m);
        basis.features(x[i], f.data());
        for (int j = 0; j < m; ++j) X(i, j) = f[j];
    }

    Eigen::MatrixXd A = X.transpose() * X;
    double lambda = fixed_ridge ? *fixed_ridge : 1e-8 * A.trace() / m;
    A.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    Eigen::VectorXd beta = ldlt.solve(X.transpose() * yv);

    FittedCurve fit;
    fit.basis = basis;
    fit.ridge = lambda;
    fit.coefficients.assign(beta.data(), beta.data() + m);
    Eigen::VectorXd pred = X * beta;
    fit.fitted.assign(pred.data(), pred.data() + n);

    // LOO residual identity e_i / (1 - h_ii) with h_ii = x_i' (X'X + lI)^-1 x_i.
    Eigen::MatrixXd AinvXt = ldlt.solve(X.transpose());
    fit.loo_predictions.resize(n);
    fit.loo_sse = 0.0;
    fit.train_sse = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double h = X.row(i).dot(AinvXt.col(i));
        double e = y[i] - pred[i];
        fit.train_sse += e * e;
        double denom = 1.0 - h;
        if (denom < 1e-12) denom = 1e-12;
        double e_loo = e / denom;
        fit.loo_predictions[i] = y[i] - e_loo;
        fit.loo_sse += e_loo * e_loo;
    }
    return fit;
}

FittedCurve fit_spline_loocv(const std::vector<double>& x, const std::vector<double>& y,
                             std::optional<double> fixed_ridge) {
    if (x.size() != y.size() || x.size() < 4) {
        throw InsufficientSamples("fit_spline_loocv needs n >= 4");
    }
    std::vector<int> grid = knot_grid(x.size());
    FittedCurve best;
    bool have = false;
    for (int m : grid) {
        FittedCurve fit = fit_spline_m(x, y, m, fixed_ridge);
        if (!std::isfinite(fit.loo_sse)) continue;
        // ties break toward smaller m; the grid is increasing
        if (!have || fit.loo_sse < best.loo_sse) {
            best = std::move(fit);
            have = true;
        }
    }
    if (!have) best = fit_spline_m(x, y, 2, fixed_ridge);
    return best;
}

}  // namespace grci
