#include <doctest.h>

#include <cmath>

#include "grci/errors.hpp"
#include "grci/gbt.hpp"
#include "grci/rng.hpp"
#include "test_util.hpp"

using namespace grci;

namespace {

double log_loss(const BoostedEnsemble& model, const Matrix& E, const std::vector<int>& d) {
    double loss = 0.0;
    for (std::size_t i = 0; i < E.rows; ++i) {
        double p = sigmoid(model.predict(E.row(i)));
        loss -= d[i] ? std::log(p) : std::log(1.0 - p);
    }
    return loss / E.rows;
}

}  // namespace

TEST_CASE("one depth-1 round reproduces the closed-form stump") {
    // 4 low feature values labeled 0, 4 high labeled 1; prior p0 = 0.5 so
    // g_i = p0 - y_i = +-0.5 and h_i = 0.25 for every row.
    Matrix E(8, 1);
    std::vector<int> d(8);
    for (int i = 0; i < 8; ++i) {
        E.at(i, 0) = i < 4 ? double(i) : double(i) + 10.0;
        d[i] = i < 4 ? 0 : 1;
    }
    BoostConfig cfg;
    cfg.rounds = 1;
    cfg.depth = 1;
    cfg.learning_rate = 1.0;
    BoostedEnsemble model = fit_logodds(E, d, cfg);

    CHECK(model.base_score == doctest::Approx(0.0));
    REQUIRE(model.trees.size() == 1);
    const Tree& t = model.trees[0];
    REQUIRE(t.nodes[0].feature == 0);
    // left leaf: G = 4 * 0.5 = 2, H = 1 -> w = -2/(1+1) = -1; right mirrors it
    CHECK(t.nodes[t.nodes[0].left].value == doctest::Approx(-1.0));
    CHECK(t.nodes[t.nodes[0].right].value == doctest::Approx(1.0));
    CHECK(t.nodes[t.nodes[0].left].cover == doctest::Approx(4.0));
    CHECK(t.nodes[t.nodes[0].right].cover == doctest::Approx(4.0));
    // the split must separate the clusters
    CHECK(t.nodes[0].threshold >= 3.0);
    CHECK(t.nodes[0].threshold < 13.0);
}

TEST_CASE("base score is the log-odds of the label mean") {
    Matrix E(10, 1);
    std::vector<int> d(10, 0);
    d[0] = d[1] = d[2] = 1;
    Rng gen(1);
    for (int i = 0; i < 10; ++i) E.at(i, 0) = gen.normal();
    BoostConfig cfg;
    cfg.rounds = 0;
    BoostedEnsemble model = fit_logodds(E, d, cfg);
    CHECK(model.base_score == doctest::Approx(std::log(0.3 / 0.7)));
    CHECK(model.trees.empty());
}

TEST_CASE("training drives the log loss down round by round") {
    Rng gen(2);
    std::size_t n = 600;
    Matrix E(n, 3);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < 3; ++j) E.at(i, j) = gen.normal();
        double z = 1.5 * E.at(i, 0) - 1.0 * E.at(i, 1) * E.at(i, 2);
        d[i] = gen.bernoulli(sigmoid(z)) ? 1 : 0;
    }
    BoostConfig cfg;
    double prev = std::numeric_limits<double>::infinity();
    for (int rounds : {0, 10, 50, 100}) {
        cfg.rounds = rounds;
        BoostedEnsemble model = fit_logodds(E, d, cfg);
        double loss = log_loss(model, E, d);
        CHECK(loss <= prev + 1e-12);
        prev = loss;
    }
    CHECK(prev < 0.55);
}

TEST_CASE("a separable single feature is classified almost perfectly") {
    Rng gen(3);
    std::size_t n = 400;
    Matrix E(n, 1);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = i % 2;
        E.at(i, 0) = d[i] ? gen.uniform(1.0, 2.0) : gen.uniform(-2.0, -1.0);
    }
    BoostedEnsemble model = fit_logodds(E, d);
    int correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        correct += (model.predict(E.row(i)) > 0.0) == (d[i] == 1);
    }
    CHECK(correct == static_cast<int>(n));
}

TEST_CASE("single-class labels are rejected") {
    Matrix E(20, 2);
    Rng gen(4);
    for (std::size_t i = 0; i < 20; ++i) {
        E.at(i, 0) = gen.normal();
        E.at(i, 1) = gen.normal();
    }
    CHECK_THROWS_AS(fit_logodds(E, std::vector<int>(20, 1)), DegenerateLabel);
    CHECK_THROWS_AS(fit_logodds(E, std::vector<int>(20, 0)), DegenerateLabel);
}

TEST_CASE("fit is deterministic") {
    Rng gen(5);
    std::size_t n = 300;
    Matrix E(n, 2);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        E.at(i, 0) = gen.normal();
        E.at(i, 1) = gen.normal();
        d[i] = gen.bernoulli(sigmoid(E.at(i, 0))) ? 1 : 0;
    }
    BoostedEnsemble a = fit_logodds(E, d);
    BoostedEnsemble b = fit_logodds(E, d);
    REQUIRE(a.trees.size() == b.trees.size());
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(a.predict(E.row(i)) == b.predict(E.row(i)));
    }
}

TEST_CASE("covers split consistently down the tree") {
    Rng gen(6);
    std::size_t n = 500;
    Matrix E(n, 2);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        E.at(i, 0) = gen.normal();
        E.at(i, 1) = gen.normal();
        d[i] = gen.bernoulli(sigmoid(2.0 * E.at(i, 0) + E.at(i, 1))) ? 1 : 0;
    }
    BoostConfig cfg;
    cfg.rounds = 5;
    BoostedEnsemble model = fit_logodds(E, d, cfg);
    for (const Tree& t : model.trees) {
        CHECK(t.nodes[0].cover == doctest::Approx(double(n)));
        for (const TreeNode& node : t.nodes) {
            if (node.feature >= 0) {
                CHECK(node.cover ==
                      doctest::Approx(t.nodes[node.left].cover + t.nodes[node.right].cover));
            }
        }
    }
}
