#pragma once

#include <cstdint>
#include <vector>

#include "grci/gbt.hpp"
#include "grci/ordering.hpp"
#include "grci/shap.hpp"
#include "grci/skeleton.hpp"

namespace grci {

struct GrciConfig {
    SkeletonConfig skeleton;
    OrderingConfig ordering;
    BoostConfig boost;
    std::uint64_t seed = 0;
    double holdout = 0.0;  // test fraction; 0 = fit and attribute on all rows
};

struct GrciOutput {
    Skeleton skeleton{0};
    ExtractionResult extraction;
    BoostedEnsemble model;
    ShapleyMatrix shapley;           // rows follow test_rows
    RootCauseReport report;
    std::vector<std::size_t> test_rows;  // original row indices attributed
};

// Full root-cause pipeline: skeleton discovery, error extraction, log-odds
// boosting on the training errors, TreeSHAP on the test rows.
GrciOutput run_grci(const Columns& features, const std::vector<int>& d, const GrciConfig& cfg);

// Error matrix (rows x variables) from an extraction, ordered by column index.
Matrix errors_as_matrix(const ExtractionResult& extraction);

}  // namespace grci
