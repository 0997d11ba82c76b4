#pragma once

#include <utility>
#include <vector>

#include "grci/rng.hpp"

namespace grci {

// Nonnegative weights on the simplex (sum to 1).
struct ProjectionVector {
    std::vector<double> weights;
};

// Columns-of-X view: each inner vector is one normalized column on [0,1].
using Columns = std::vector<std::vector<double>>;

// Collapses t normalized columns into one column via a uniform draw from the
// (t-1)-simplex, then re-normalizes the projection to [0,1]. A degenerate
// projection (constant) is returned unchanged.
std::pair<std::vector<double>, ProjectionVector> dirichlet_project(const Columns& X, Rng& rng);

}  // namespace grci
