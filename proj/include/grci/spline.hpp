#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "grci/errors.hpp"

namespace grci {

// Affine map raw -> [0,1]: y = (x - shift) * scale.
struct AffineScaler {
    double shift = 0.0;
    double scale = 1.0;

    double apply(double x) const { return (x - shift) * scale; }
    double invert(double y) const { return y / scale + shift; }
};

// Throws DegenerateColumn when the column has zero range.
std::pair<std::vector<double>, AffineScaler> normalize(const std::vector<double>& column);

// Candidate knot counts for a sample of size n: 10 equispaced values between
// 2 and sqrt(n/10) inclusive, rounded to integers and deduplicated.
std::vector<int> knot_grid(std::size_t n);

// m equispaced knots on [0,1]; the knot at 1 is dropped in favour of a
// constant offset column, so the basis is {1, (x - k_0)_+, ..., (x - k_{m-2})_+}.
struct SplineBasis {
    int knot_count = 2;
    std::vector<double> knots;  // the m-1 hinge knots, strictly increasing

    static SplineBasis equispaced(int m);
    // Writes the m basis features of x into out[0..m-1].
    void features(double x, double* out) const;
};

struct FittedCurve {
    SplineBasis basis;
    std::vector<double> coefficients;
    std::vector<double> fitted;           // full-sample predictions m-hat
    std::vector<double> loo_predictions;  // validation-fold predictions
    double loo_sse = 0.0;
    double train_sse = 0.0;
    double ridge = 0.0;  // lambda actually used in the normal equations

    double predict(double x) const;
};

// Least squares of y on the hinge basis with knot count chosen by exact
// leave-one-out cross-validation (hat-matrix identity). A ridge term
// 1e-8 * trace(X'X)/m conditions the normal equations; pass fixed_ridge to
// pin lambda (the refit oracle in the tests relies on this).
FittedCurve fit_spline_loocv(const std::vector<double>& x, const std::vector<double>& y,
                             std::optional<double> fixed_ridge = std::nullopt);

// Single-m fit, used by fit_spline_loocv and by the brute-force LOO oracle.
FittedCurve fit_spline_m(const std::vector<double>& x, const std::vector<double>& y, int m,
                         std::optional<double> fixed_ridge = std::nullopt);

}  // namespace grci
