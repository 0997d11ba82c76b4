#pragma once

#include <vector>

#include "grci/projection.hpp"
#include "grci/rng.hpp"
#include "grci/spline.hpp"

namespace grci {

struct PartialOutFit {
    FittedCurve mean_fit;   // conditional expectation
    FittedCurve mad_fit;    // conditional mean absolute deviation
    std::vector<double> errors;
    ProjectionVector projection;
    bool degenerate = false;
};

// Two-stage regression recovering one error term. Stage 1 regresses xi on a
// Dirichlet projection of V with LOO cross-validation; stage 2 regresses
// |xi - loo_prediction| on the same projection and folds. Errors are
// (xi - conditional mean) / max(conditional MAD, 1e-6). Empty V standardizes
// by the marginal mean and MAD. Inputs are normalized internally.
PartialOutFit partial_out(const Columns& V, const std::vector<double>& xi, Rng& rng);

}  // namespace grci
