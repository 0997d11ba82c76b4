#include "grci/shap.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "grci/errors.hpp"

namespace grci {

double tree_expectation(const Tree& tree, const double* e, unsigned long mask) {
    struct Walker {
        const Tree& t;
        const double* e;
        unsigned long mask;
        double visit(int nd) const {
            const TreeNode& node = t.nodes[nd];
            if (node.feature < 0) return node.value;
            if (mask & (1UL << node.feature)) {
                return visit(e[node.feature] <= node.threshold ? node.left : node.right);
            }
            double cl = t.nodes[node.left].cover, cr = t.nodes[node.right].cover;
            return (cl * visit(node.left) + cr * visit(node.right)) / (cl + cr);
        }
    };
    return Walker{tree, e, mask}.visit(0);
}

double expected_value(const BoostedEnsemble& model) {
    double s = model.base_score;
    for (const Tree& t : model.trees) {
        s += model.learning_rate * tree_expectation(t, nullptr, 0UL);
    }
    return s;
}

namespace {

struct PathElement {
    int feature_index = -1;
    double zero_fraction = 0.0;
    double one_fraction = 0.0;
    double pweight = 0.0;
};

void extend_path(PathElement* path, int unique_depth, double zero_fraction,
                 double one_fraction, int feature_index) {
    path[unique_depth] = PathElement{feature_index, zero_fraction, one_fraction,
                                     unique_depth == 0 ? 1.0 : 0.0};
    for (int i = unique_depth - 1; i >= 0; --i) {
        path[i + 1].pweight +=
            one_fraction * path[i].pweight * (i + 1.0) / (unique_depth + 1.0);
        path[i].pweight =
            zero_fraction * path[i].pweight * (unique_depth - i) / (unique_depth + 1.0);
    }
}

void unwind_path(PathElement* path, int unique_depth, int path_index) {
    const double one_fraction = path[path_index].one_fraction;
    const double zero_fraction = path[path_index].zero_fraction;
    double next_one_portion = path[unique_depth].pweight;
    for (int i = unique_depth - 1; i >= 0; --i) {
        if (one_fraction != 0.0) {
            double tmp = path[i].pweight;
            path[i].pweight =
                next_one_portion * (unique_depth + 1.0) / ((i + 1.0) * one_fraction);
            next_one_portion =
                tmp - path[i].pweight * zero_fraction * (unique_depth - i) / (unique_depth + 1.0);
        } else {
            path[i].pweight = path[i].pweight * (unique_depth + 1.0) /
                              (zero_fraction * (unique_depth - i));
        }
    }
    for (int i = path_index; i < unique_depth; ++i) {
        path[i].feature_index = path[i + 1].feature_index;
        path[i].zero_fraction = path[i + 1].zero_fraction;
        path[i].one_fraction = path[i + 1].one_fraction;
    }
}

double unwound_path_sum(const PathElement* path, int unique_depth, int path_index) {
    const double one_fraction = path[path_index].one_fraction;
    const double zero_fraction = path[path_index].zero_fraction;
    double next_one_portion = path[unique_depth].pweight;
    double total = 0.0;
    for (int i = unique_depth - 1; i >= 0; --i) {
        if (one_fraction != 0.0) {
            double tmp =
                next_one_portion * (unique_depth + 1.0) / ((i + 1.0) * one_fraction);
            total += tmp;
            next_one_portion =
                path[i].pweight - tmp * zero_fraction * (unique_depth - i) / (unique_depth + 1.0);
        } else {
            total += path[i].pweight / (zero_fraction * (unique_depth - i) / (unique_depth + 1.0));
        }
    }
    return total;
}

void shap_recurse(const Tree& tree, const double* x, double* phi, int node,
                  int unique_depth, PathElement* parent_path, double zero_fraction,
                  double one_fraction, int feature_index) {
    PathElement* path = parent_path + unique_depth + 1;
    std::memcpy(path, parent_path, (unique_depth + 1) * sizeof(PathElement));
    extend_path(path, unique_depth, zero_fraction, one_fraction, feature_index);

    const TreeNode& nd = tree.nodes[node];
    if (nd.feature < 0) {
        for (int i = 1; i <= unique_depth; ++i) {
            double w = unwound_path_sum(path, unique_depth, i);
            phi[path[i].feature_index] +=
                w * (path[i].one_fraction - path[i].zero_fraction) * nd.value;
        }
        return;
    }

    int hot = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
    int cold = hot == nd.left ? nd.right : nd.left;
    double hot_zero = tree.nodes[hot].cover / nd.cover;
    double cold_zero = tree.nodes[cold].cover / nd.cover;
    double incoming_zero = 1.0, incoming_one = 1.0;

    // undo any previous split on the same feature along this path
    int previous = -1;
    for (int i = 1; i <= unique_depth; ++i) {
        if (path[i].feature_index == nd.feature) {
            previous = i;
            break;
        }
    }
    int depth = unique_depth;
    if (previous >= 0) {
        incoming_zero = path[previous].zero_fraction;
        incoming_one = path[previous].one_fraction;
        unwind_path(path, depth, previous);
        --depth;
    }

    shap_recurse(tree, x, phi, hot, depth + 1, path, hot_zero * incoming_zero,
                 incoming_one, nd.feature);
    shap_recurse(tree, x, phi, cold, depth + 1, path, cold_zero * incoming_zero, 0.0,
                 nd.feature);
}

int tree_depth(const Tree& tree, int node = 0) {
    const TreeNode& nd = tree.nodes[node];
    if (nd.feature < 0) return 0;
    return 1 + std::max(tree_depth(tree, nd.left), tree_depth(tree, nd.right));
}

}  // namespace

std::vector<double> tree_shap(const BoostedEnsemble& model, const std::vector<double>& e) {
    std::vector<double> phi(model.n_features, 0.0);
    for (const Tree& t : model.trees) {
        int d = tree_depth(t) + 2;
        std::vector<PathElement> scratch((d * (d + 1)) / 2 + d);
        shap_recurse(t, e.data(), phi.data(), 0, 0, scratch.data(), 1.0, 1.0, -1);
    }
    for (double& v : phi) v *= model.learning_rate;
    return phi;
}

ShapleyMatrix tree_shap_matrix(const BoostedEnsemble& model, const Matrix& E_test) {
    ShapleyMatrix out;
    out.base = expected_value(model);
    out.values = Matrix(E_test.rows, E_test.cols);
    std::vector<double> row(E_test.cols);
    for (std::size_t i = 0; i < E_test.rows; ++i) {
        std::copy(E_test.row(i), E_test.row(i) + E_test.cols, row.begin());
        std::vector<double> phi = tree_shap(model, row);
        for (std::size_t j = 0; j < E_test.cols; ++j) out.values.at(i, j) = phi[j];
    }
    return out;
}

std::vector<double> exact_shap(const std::function<double(const std::vector<double>&)>& predict,
                               const Matrix& background, const std::vector<double>& e) {
    const int p = static_cast<int>(e.size());
    if (p > 14) throw EnumerationBudget("exact_shap: p > 14");

    // v(W) for all subsets: interventional expectation over background rows
    const unsigned long nsub = 1UL << p;
    std::vector<double> v(nsub, 0.0);
    std::vector<double> composite(p);
    for (unsigned long mask = 0; mask < nsub; ++mask) {
        double acc = 0.0;
        for (std::size_t r = 0; r < background.rows; ++r) {
            for (int j = 0; j < p; ++j) {
                composite[j] = (mask & (1UL << j)) ? e[j] : background.at(r, j);
            }
            acc += predict(composite);
        }
        v[mask] = acc / background.rows;
    }

    std::vector<double> fact(p + 1, 1.0);
    for (int i = 1; i <= p; ++i) fact[i] = fact[i - 1] * i;

    std::vector<double> phi(p, 0.0);
    for (int i = 0; i < p; ++i) {
        for (unsigned long mask = 0; mask < nsub; ++mask) {
            if (mask & (1UL << i)) continue;
            int w = __builtin_popcountl(mask);
            double weight = fact[w] * fact[p - w - 1] / fact[p];
            phi[i] += weight * (v[mask | (1UL << i)] - v[mask]);
        }
    }
    return phi;
}

RootCauseReport root_causes(const ShapleyMatrix& S) {
    RootCauseReport report(S.values.rows);
    for (std::size_t i = 0; i < S.values.rows; ++i) {
        for (std::size_t j = 0; j < S.values.cols; ++j) {
            if (S.values.at(i, j) > 0.0) {
                report[i].push_back(RootCauseEntry{static_cast<int>(j), S.values.at(i, j)});
            }
        }
        std::sort(report[i].begin(), report[i].end(),
                  [](const RootCauseEntry& a, const RootCauseEntry& b) {
                      if (a.value != b.value) return a.value > b.value;
                      return a.variable < b.variable;
                  });
    }
    return report;
}

}  // namespace grci
