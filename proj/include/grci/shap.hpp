#pragma once

#include <functional>
#include <vector>

#include "grci/gbt.hpp"

namespace grci {

struct ShapleyMatrix {
    Matrix values;      // n_test x p attributions
    double base = 0.0;  // expected model output
};

struct RootCauseEntry {
    int variable;
    double value;
};

// Per patient: strictly positive attributions sorted descending.
using RootCauseReport = std::vector<std::vector<RootCauseEntry>>;

// Path-dependent expectation of a single tree: features in `mask` are fixed to
// e, the rest are averaged with training-cover weights.
double tree_expectation(const Tree& tree, const double* e, unsigned long mask);

// Expected ensemble output under the path-dependent weighting (the tree_shap base).
double expected_value(const BoostedEnsemble& model);

// Path-dependent TreeSHAP attributions for one sample, summed over trees and
// scaled by the learning rate.
std::vector<double> tree_shap(const BoostedEnsemble& model, const std::vector<double>& e);

ShapleyMatrix tree_shap_matrix(const BoostedEnsemble& model, const Matrix& E_test);

// Brute-force Shapley values of an arbitrary model via 2^p subset enumeration;
// v(W) is the interventional expectation over the background rows. Throws
// EnumerationBudget for p > 14.
std::vector<double> exact_shap(const std::function<double(const std::vector<double>&)>& predict,
                               const Matrix& background, const std::vector<double>& e);

RootCauseReport root_causes(const ShapleyMatrix& S);

}  // namespace grci
