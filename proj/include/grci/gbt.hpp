#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace grci {

// Row-major sample matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;  // go left when x[feature] <= threshold
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf weight, unscaled by the learning rate
    double cover = 0.0;  // training instances reaching the node
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root

    double predict(const double* x) const {
        int node = 0;
        while (nodes[node].feature >= 0) {
            node = x[nodes[node].feature] <= nodes[node].threshold ? nodes[node].left
                                                                   : nodes[node].right;
        }
        return nodes[node].value;
    }
};

struct BoostConfig {
    int rounds = 100;
    int depth = 3;
    double learning_rate = 0.1;
    double lambda = 1.0;           // L2 on leaf weights
    double min_child_weight = 1.0;
    int max_bins = 256;
};

struct BoostedEnsemble {
    std::vector<Tree> trees;
    double learning_rate = 0.1;
    double base_score = 0.0;  // log-odds prior
    int n_features = 0;

    // model log-odds f(e)
    double predict(const double* e) const {
        double s = base_score;
        for (const Tree& t : trees) s += learning_rate * t.predict(e);
        return s;
    }
    double predict(const std::vector<double>& e) const { return predict(e.data()); }
};

// Second-order gradient boosting with logistic loss and histogram splits.
// Throws DegenerateLabel when only one class is present.
BoostedEnsemble fit_logodds(const Matrix& E_train, const std::vector<int>& d_train,
                            const BoostConfig& cfg = {});

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace grci
