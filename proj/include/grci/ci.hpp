#pragma once

#include <vector>

#include "grci/mi.hpp"
#include "grci/projection.hpp"
#include "grci/rng.hpp"

namespace grci {

struct CiResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool independent = true;
};

// Residuals of y on a Dirichlet projection of W via the LOO spline fit.
// Residual = value - validation-fold prediction. Empty W returns y centered.
std::vector<double> residualize(const std::vector<double>& y, const Columns& W, Rng& rng);

// Nonparametric conditional-independence test: KSG mutual information of the
// spline residuals, calibrated by a permutation null that shuffles one side.
CiResult ci_test(const std::vector<double>& xi, const std::vector<double>& xj,
                 const Columns& W, double alpha, int B, Rng& rng, int k = 10);

}  // namespace grci
