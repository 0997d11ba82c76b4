#pragma once

#include <cstdint>
#include <vector>

#include "grci/gbt.hpp"
#include "grci/rng.hpp"
#include "grci/shap.hpp"

namespace grci {

enum class PairFamily { LiNGAM, ANM, HNM, PNL };
enum class NoiseClass { NonGaussian, Gaussian };

enum class ErrorDist : int { Uniform = 0, StudentT5 = 1, ChiSq3 = 2, Gaussian = 3 };

// Standardized draw: mean 0, mean absolute deviation 1.
double draw_error(ErrorDist dist, Rng& rng);

// The three smooth nonlinearities used for both f and g - 1.
double nonlinearity(int choice, double x);
// Strictly monotone outer transforms for the PNL robustness generator.
double pnl_outer(int choice, double x);

struct PairSample {
    std::vector<double> x;
    std::vector<double> y;
    PairFamily family;
};

// Bivariate generator; the causal direction is always x -> y.
PairSample sample_pair(PairFamily family, std::size_t n, Rng& rng,
                       NoiseClass noise = NoiseClass::NonGaussian);

// Complete generative description of a multivariate HNM (or PNL) system.
struct SemSpec {
    int p = 0;
    std::vector<bool> dag;        // p*p upper-triangular adjacency, pre-permutation
    std::vector<double> beta1;    // p*p mean coefficients
    std::vector<double> beta2;    // p*p scale coefficients
    std::vector<int> f_choice;    // per variable
    std::vector<int> g_choice;
    std::vector<ErrorDist> error_dist;
    std::vector<int> permutation;  // output column = permutation[internal index]
    int target = 0;                // internal index of the label sink
    double label_intercept = 0.0;
    double label_gain = 3.0;
    bool pnl = false;
    std::vector<int> h_choice;     // outer transforms when pnl is set

    bool edge(int j, int i) const { return dag[static_cast<std::size_t>(j) * p + i]; }
    // True skeleton in output (post-permutation) variable indexing.
    std::vector<std::pair<int, int>> skeleton_edges() const;
    int target_output_index() const;
};

SemSpec sample_spec(int p, double expected_degree, Rng& rng,
                    NoiseClass noise = NoiseClass::NonGaussian, bool pnl = false);

struct GeneratedData {
    Matrix features;       // n x (p-1), output variable order minus the label slot
    std::vector<int> d;    // binary label
    Matrix true_errors;    // n x (p-1), aligned with features
    SemSpec spec;
};

// Ancestral sampling through the spec; the designated sink becomes the label.
GeneratedData generate(const SemSpec& spec, std::size_t n, Rng& rng);

// Tunes spec.label_intercept by bisection toward 50% prevalence on a pre-sample.
void tune_label_intercept(SemSpec& spec, Rng& rng, std::size_t pre_n = 10000);

// Ground-truth Shapley protocol: train the log-odds model on 50k fresh draws of
// the true error terms, then run TreeSHAP on the supplied rows.
ShapleyMatrix ground_truth_shapley(const SemSpec& spec, const Matrix& test_rows, Rng& rng,
                                   std::size_t train_n = 50000);

}  // namespace grci
