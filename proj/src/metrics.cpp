#include "grci/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "grci/errors.hpp"

namespace grci {

namespace {

double rbo_patient(const RankedPatient& pt, const std::vector<double>& weights) {
    double score = 0.0;
    for (std::size_t i = 0; i < pt.truth_ranking.size(); ++i) {
        std::size_t depth = i + 1;
        int overlap = 0;
        for (std::size_t a = 0; a < depth && a < pt.ranking.size(); ++a) {
            for (std::size_t b = 0; b < depth; ++b) {
                if (pt.ranking[a] == pt.truth_ranking[b]) {
                    ++overlap;
                    break;
                }
            }
        }
        score += weights[i] * overlap / static_cast<double>(depth);
    }
    return score;
}

double rbo_impl(const std::vector<RankedPatient>& patients, bool uniform) {
    double total = 0.0;
    std::size_t counted = 0;
    for (const auto& pt : patients) {
        if (pt.truth_ranking.empty()) continue;
        std::vector<double> w;
        if (uniform) {
            w.assign(pt.truth_ranking.size(), 1.0 / pt.truth_ranking.size());
        } else {
            w = pt.truth_weights;
            double s = std::accumulate(w.begin(), w.end(), 0.0);
            if (s <= 0.0) continue;
            for (double& v : w) v /= s;
        }
        total += rbo_patient(pt, w);
        ++counted;
    }
    return counted ? total / counted : 0.0;
}

}  // namespace

double rbo(const std::vector<RankedPatient>& patients) { return rbo_impl(patients, false); }

double modified_rbo(const std::vector<RankedPatient>& patients) {
    return rbo_impl(patients, true);
}

double shapley_mse(const Matrix& estimates, const Matrix& truth) {
    if (estimates.rows != truth.rows || estimates.cols != truth.cols) {
        throw InputError("shapley_mse: shape mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.data.size(); ++i) {
        double d = estimates.data[i] - truth.data[i];
        acc += d * d;
    }
    return acc / static_cast<double>(truth.rows * truth.cols);
}

double weighted_pair_accuracy(const std::vector<PairDecision>& decisions) {
    double num = 0.0, den = 0.0;
    for (const auto& d : decisions) {
        den += d.weight;
        if (d.correct) num += d.weight;
    }
    return den > 0.0 ? num / den : 0.0;
}

std::vector<RankedPatient> ranked_patients(const Matrix& estimates, const Matrix& truth) {
    if (estimates.rows != truth.rows || estimates.cols != truth.cols) {
        throw InputError("ranked_patients: shape mismatch");
    }
    const std::size_t p = truth.cols;
    std::vector<RankedPatient> out(truth.rows);
    for (std::size_t r = 0; r < truth.rows; ++r) {
        RankedPatient& pt = out[r];
        std::vector<int> order(p);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double va = estimates.at(r, a), vb = estimates.at(r, b);
            if (va != vb) return va > vb;
            return a < b;
        });
        pt.ranking = order;

        std::vector<int> truth_order;
        for (std::size_t j = 0; j < p; ++j) {
            if (truth.at(r, j) > 0.0) truth_order.push_back(static_cast<int>(j));
        }
        std::sort(truth_order.begin(), truth_order.end(), [&](int a, int b) {
            double va = truth.at(r, a), vb = truth.at(r, b);
            if (va != vb) return va > vb;
            return a < b;
        });
        double s = 0.0;
        for (int j : truth_order) s += truth.at(r, j);
        pt.truth_ranking = truth_order;
        for (int j : truth_order) pt.truth_weights.push_back(truth.at(r, j) / s);
    }
    return out;
}

}  // namespace grci
