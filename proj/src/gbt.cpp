#include "grci/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "grci/errors.hpp"

namespace grci {

namespace {

// Interior cut points per feature; bin(x) = #cuts <= ... = index of the first
// cut >= x scanning from below, i.e. upper_bound over "x <= cut".
struct Binning {
    std::vector<std::vector<double>> cuts;  // per feature, sorted

    int bin(int feature, double x) const {
        const auto& c = cuts[feature];
        return static_cast<int>(std::lower_bound(c.begin(), c.end(), x) - c.begin());
    }
};

Binning build_bins(const Matrix& X, int max_bins) {
    Binning b;
    b.cuts.resize(X.cols);
    std::vector<double> vals(X.rows);
    for (std::size_t j = 0; j < X.cols; ++j) {
        for (std::size_t i = 0; i < X.rows; ++i) vals[i] = X.at(i, j);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        auto& cuts = b.cuts[j];
        if (static_cast<int>(vals.size()) <= max_bins) {
            for (std::size_t t = 0; t + 1 < vals.size(); ++t) {
                cuts.push_back(0.5 * (vals[t] + vals[t + 1]));
            }
        } else {
            for (int t = 1; t < max_bins; ++t) {
                std::size_t idx = t * vals.size() / max_bins;
                double cut = 0.5 * (vals[idx - 1] + vals[idx]);
                if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
            }
        }
    }
    return b;
}

struct SplitDecision {
    double gain = 0.0;
    int feature = -1;
    int bin = -1;  // go left when bin(x) <= bin
};

}  // namespace

BoostedEnsemble fit_logodds(const Matrix& E_train, const std::vector<int>& d_train,
                            const BoostConfig& cfg) {
    const std::size_t n = E_train.rows;
    const int p = static_cast<int>(E_train.cols);
    double pos = std::accumulate(d_train.begin(), d_train.end(), 0.0);
    if (pos == 0.0 || pos == static_cast<double>(n)) throw DegenerateLabel();

    BoostedEnsemble model;
    model.learning_rate = cfg.learning_rate;
    model.n_features = p;
    double prior = pos / n;
    model.base_score = std::log(prior / (1.0 - prior));

    Binning bins = build_bins(E_train, cfg.max_bins);
    // pre-binned feature codes
    std::vector<std::vector<int>> code(p, std::vector<int>(n));
    std::vector<int> nbins(p);
    for (int j = 0; j < p; ++j) {
        nbins[j] = static_cast<int>(bins.cuts[j].size()) + 1;
        for (std::size_t i = 0; i < n; ++i) code[j][i] = bins.bin(j, E_train.at(i, j));
    }

    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n), hess(n);

    for (int round = 0; round < cfg.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double pr = sigmoid(margin[i]);
            grad[i] = pr - d_train[i];
            hess[i] = std::max(pr * (1.0 - pr), 1e-16);
        }

        Tree tree;
        tree.nodes.emplace_back();
        // node assignment of every training row; grown level by level
        std::vector<int> assign(n, 0);
        std::vector<int> split_bin;  // per node, parallel to tree.nodes
        split_bin.push_back(-1);
        std::vector<int> frontier{0};

        for (int level = 0; level < cfg.depth && !frontier.empty(); ++level) {
            // histograms for every frontier node
            std::vector<SplitDecision> best(tree.nodes.size());
            std::vector<double> gsum(tree.nodes.size(), 0.0), hsum(tree.nodes.size(), 0.0);
            std::vector<double> csum(tree.nodes.size(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                int nd = assign[i];
                if (nd < 0) continue;
                gsum[nd] += grad[i];
                hsum[nd] += hess[i];
                csum[nd] += 1.0;
            }
            for (int nd : frontier) tree.nodes[nd].cover = csum[nd];

            for (int j = 0; j < p; ++j) {
                int nb = nbins[j];
                if (nb < 2) continue;
                // per-node histograms over this feature
                std::vector<double> hg(frontier.size() * nb, 0.0);
                std::vector<double> hh(frontier.size() * nb, 0.0);
                std::vector<double> hc(frontier.size() * nb, 0.0);
                std::vector<int> slot(tree.nodes.size(), -1);
                for (std::size_t t = 0; t < frontier.size(); ++t) slot[frontier[t]] = static_cast<int>(t);
                const auto& cj = code[j];
                for (std::size_t i = 0; i < n; ++i) {
                    int nd = assign[i];
                    if (nd < 0 || slot[nd] < 0) continue;
                    std::size_t off = static_cast<std::size_t>(slot[nd]) * nb + cj[i];
                    hg[off] += grad[i];
                    hh[off] += hess[i];
                    hc[off] += 1.0;
                }
                for (std::size_t t = 0; t < frontier.size(); ++t) {
                    int nd = frontier[t];
                    double G = gsum[nd], H = hsum[nd];
                    double parent_obj = G * G / (H + cfg.lambda);
                    double GL = 0.0, HL = 0.0, CL = 0.0;
                    for (int b = 0; b + 1 < nb; ++b) {
                        std::size_t off = t * nb + b;
                        GL += hg[off];
                        HL += hh[off];
                        CL += hc[off];
                        double HR = H - HL, GR = G - GL;
                        if (HL < cfg.min_child_weight || HR < cfg.min_child_weight) continue;
                        if (CL < 1.0 || csum[nd] - CL < 1.0) continue;
                        double gain = 0.5 * (GL * GL / (HL + cfg.lambda) +
                                             GR * GR / (HR + cfg.lambda) - parent_obj);
                        if (gain > best[nd].gain) best[nd] = SplitDecision{gain, j, b};
                    }
                }
            }

            std::vector<int> next_frontier;
            for (int nd : frontier) {
                if (best[nd].feature < 0) continue;
                int left = static_cast<int>(tree.nodes.size());
                tree.nodes.emplace_back();
                tree.nodes.emplace_back();
                split_bin.push_back(-1);
                split_bin.push_back(-1);
                TreeNode& node = tree.nodes[nd];
                node.feature = best[nd].feature;
                node.threshold = bins.cuts[best[nd].feature][best[nd].bin];
                node.left = left;
                node.right = left + 1;
                split_bin[nd] = best[nd].bin;
                next_frontier.push_back(node.left);
                next_frontier.push_back(node.right);
            }
            if (next_frontier.empty()) break;
            for (std::size_t i = 0; i < n; ++i) {
                int nd = assign[i];
                if (nd < 0) continue;
                const TreeNode& node = tree.nodes[nd];
                if (node.feature >= 0) {
                    assign[i] = code[node.feature][i] <= split_bin[nd] ? node.left : node.right;
                }
            }
            frontier = std::move(next_frontier);
        }

        // leaf values and covers from final assignment
        std::vector<double> gleaf(tree.nodes.size(), 0.0), hleaf(tree.nodes.size(), 0.0);
        std::vector<double> cleaf(tree.nodes.size(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            // route to the leaf (assign may stop at last split level)
            int nd = assign[i];
            while (tree.nodes[nd].feature >= 0) {
                const TreeNode& node = tree.nodes[nd];
                nd = E_train.at(i, node.feature) <= node.threshold ? node.left : node.right;
            }
            assign[i] = nd;
            gleaf[nd] += grad[i];
            hleaf[nd] += hess[i];
            cleaf[nd] += 1.0;
        }
        for (std::size_t nd = 0; nd < tree.nodes.size(); ++nd) {
            if (tree.nodes[nd].feature < 0) {
                tree.nodes[nd].value = -gleaf[nd] / (hleaf[nd] + cfg.lambda);
                tree.nodes[nd].cover = cleaf[nd];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += cfg.learning_rate * tree.nodes[assign[i]].value;
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace grci
