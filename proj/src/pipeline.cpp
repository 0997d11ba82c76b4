#include "grci/pipeline.hpp"

#include <numeric>

#include "grci/errors.hpp"
#include "grci/rng.hpp"

namespace grci {

Matrix errors_as_matrix(const ExtractionResult& extraction) {
    const std::size_t p = extraction.errors.size();
    const std::size_t n = p ? extraction.errors[0].size() : 0;
    Matrix m(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = extraction.errors[j][i];
    }
    return m;
}

GrciOutput run_grci(const Columns& features, const std::vector<int>& d, const GrciConfig& cfg) {
    GrciOutput out;
    out.skeleton = skeleton_stable(features, cfg.skeleton, cfg.seed);
    out.extraction = extract_errors(features, out.skeleton, combine_seed(cfg.seed, 0xee1ULL),
                                    cfg.ordering);
    Matrix E = errors_as_matrix(out.extraction);

    const std::size_t n = E.rows;
    std::vector<std::size_t> train_rows(n);
    std::iota(train_rows.begin(), train_rows.end(), 0);
    out.test_rows = train_rows;
    if (cfg.holdout > 0.0) {
        if (cfg.holdout >= 1.0) throw InputError("holdout fraction must be in [0,1)");
        std::vector<std::size_t> shuffled = train_rows;
        Rng rng(combine_seed(cfg.seed, 0x5011ULL));
        rng.shuffle(shuffled);
        std::size_t n_test = static_cast<std::size_t>(cfg.holdout * n);
        if (n_test == 0 || n_test >= n) throw InputError("holdout split is degenerate");
        out.test_rows.assign(shuffled.begin(), shuffled.begin() + n_test);
        train_rows.assign(shuffled.begin() + n_test, shuffled.end());
        std::sort(out.test_rows.begin(), out.test_rows.end());
        std::sort(train_rows.begin(), train_rows.end());
    }

    Matrix E_train(train_rows.size(), E.cols);
    std::vector<int> d_train;
    for (std::size_t r = 0; r < train_rows.size(); ++r) {
        for (std::size_t j = 0; j < E.cols; ++j) E_train.at(r, j) = E.at(train_rows[r], j);
        d_train.push_back(d[train_rows[r]]);
    }
    out.model = fit_logodds(E_train, d_train, cfg.boost);

    Matrix E_test(out.test_rows.size(), E.cols);
    for (std::size_t r = 0; r < out.test_rows.size(); ++r) {
        for (std::size_t j = 0; j < E.cols; ++j) E_test.at(r, j) = E.at(out.test_rows[r], j);
    }
    out.shapley = tree_shap_matrix(out.model, E_test);
    out.report = root_causes(out.shapley);
    return out;
}

}  // namespace grci
