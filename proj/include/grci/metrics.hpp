#pragma once

#include <vector>

#include "grci/gbt.hpp"

namespace grci {

struct RankedPatient {
    std::vector<int> ranking;        // estimated order, best first
    std::vector<int> truth_ranking;  // ground-truth root causes, best first
    std::vector<double> truth_weights;  // positive, sum to 1, aligned with truth_ranking
};

// Rank-biased overlap of estimated vs ground-truth root-cause lists, weighted
// by the normalized true Shapley values. Patients with no root causes are skipped.
double rbo(const std::vector<RankedPatient>& patients);

// As rbo but with uniform weights 1/q_k.
double modified_rbo(const std::vector<RankedPatient>& patients);

double shapley_mse(const Matrix& estimates, const Matrix& truth);

struct PairDecision {
    bool correct;
    double weight = 1.0;
};

double weighted_pair_accuracy(const std::vector<PairDecision>& decisions);

// Builds the per-patient ranked lists from estimated and ground-truth Shapley
// matrices: truth keeps the strictly positive entries; the estimate ranks all
// variables by descending value.
std::vector<RankedPatient> ranked_patients(const Matrix& estimates, const Matrix& truth);

}  // namespace grci
