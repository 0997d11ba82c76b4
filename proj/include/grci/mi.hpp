#pragma once

#include <cstdint>
#include <vector>

#include "grci/rng.hpp"

namespace grci {

struct MiEstimate {
    double value = 0.0;  // nats; may be slightly negative, never clamped
    int k = 0;
};

double digamma(double x);

// Integer ranks 0..n-1 after adding uniform tie-breaking jitter of magnitude
// 1e-10 * range. The jitter stream is keyed to the data content so equal
// inputs always receive identical noise.
std::vector<int> jittered_ranks(const std::vector<double>& v, std::uint64_t seed_base = 0);

// KSG estimator #1 on rank-transformed margins (each a permutation of 0..n-1),
// Chebyshev distances in rank units.
double ksg_mi_ranked(const std::vector<int>& rx, const std::vector<int>& ry, int k);

// Kraskov k-NN mutual information with rank (copula) preprocessing.
MiEstimate knn_mi(const std::vector<double>& a, const std::vector<double>& b, int k = 10,
                  std::uint64_t seed_base = 0);

}  // namespace grci
