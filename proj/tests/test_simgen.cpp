#include <doctest.h>

#include <cmath>
#include <numeric>

#include "grci/errors.hpp"
#include "grci/rng.hpp"
#include "grci/simgen.hpp"
#include "test_util.hpp"

using namespace grci;

TEST_CASE("every error family is standardized to mean 0 and mean |e| 1") {
    for (ErrorDist dist : {ErrorDist::Uniform, ErrorDist::StudentT5, ErrorDist::ChiSq3,
                           ErrorDist::Gaussian}) {
        Rng rng(100 + static_cast<int>(dist));
        std::size_t n = 400000;
        double mean = 0.0, mad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = draw_error(dist, rng);
            mean += e;
            mad += std::abs(e);
        }
        mean /= n;
        mad /= n;
        CHECK(std::abs(mean) < 0.02);
        CHECK(mad == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("nonlinearities hit known values") {
    CHECK(nonlinearity(0, 0.0) == doctest::Approx(0.0));
    CHECK(nonlinearity(0, 1.0) == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(nonlinearity(1, 0.0) == doctest::Approx(0.0));
    // x * Phi(x) at x = 1.2816 (90th percentile): Phi = 0.9
    CHECK(nonlinearity(1, 1.2815515655446004) ==
          doctest::Approx(1.2815515655446004 * 0.9).epsilon(1e-6));
    CHECK(nonlinearity(2, 0.0) == doctest::Approx(0.5));

    CHECK(pnl_outer(0, 0.5) == doctest::Approx(std::tanh(0.5)));
    CHECK(pnl_outer(1, 0.0) == doctest::Approx(std::log(2.0)));
    CHECK(pnl_outer(1, 30.0) == doctest::Approx(30.0).epsilon(1e-9));
    CHECK(pnl_outer(2, 0.0) == doctest::Approx(0.5));
    // monotonicity of the outer transforms
    for (int h = 0; h < 3; ++h) {
        double prev = pnl_outer(h, -5.0);
        for (double x = -4.5; x <= 5.0; x += 0.5) {
            double cur = pnl_outer(h, x);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("linear pairs with Gaussian noise are rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_pair(PairFamily::LiNGAM, 10, rng, NoiseClass::Gaussian), InputError);
}

TEST_CASE("pair generator produces the requested length and finite values") {
    for (PairFamily fam : {PairFamily::LiNGAM, PairFamily::ANM, PairFamily::HNM,
                           PairFamily::PNL}) {
        Rng rng(7 + static_cast<int>(fam));
        PairSample s = sample_pair(fam, 500, rng);
        CHECK(s.x.size() == 500);
        CHECK(s.y.size() == 500);
        for (std::size_t i = 0; i < 500; ++i) {
            CHECK(std::isfinite(s.x[i]));
            CHECK(std::isfinite(s.y[i]));
        }
    }
}

TEST_CASE("sampled systems are acyclic with a parented label sink") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        SemSpec s = sample_spec(8, 1.5, rng);
        // adjacency strictly upper triangular in internal order
        for (int i = 0; i < 8; ++i) {
            for (int j = i; j < 8; ++j) {
                CHECK_FALSE(s.edge(j, i));
            }
        }
        bool has_parent = false;
        for (int j = 0; j < s.target; ++j) has_parent |= s.edge(j, s.target);
        CHECK(has_parent);
        // permutation is a bijection
        std::vector<int> seen(8, 0);
        for (int v : s.permutation) ++seen[v];
        for (int c : seen) CHECK(c == 1);
    }
}

TEST_CASE("edgeless draws get a forced parent for the label") {
    Rng rng(3);
    SemSpec s = sample_spec(4, 0.0, rng);
    CHECK(s.target == 3);
    CHECK(s.edge(0, 3));
}

TEST_CASE("generated matrices have p-1 columns and reproducible content") {
    Rng rng(5);
    SemSpec s = sample_spec(6, 1.5, rng);
    Rng g1(9), g2(9);
    GeneratedData a = generate(s, 200, g1);
    GeneratedData b = generate(s, 200, g2);
    CHECK(a.features.cols == 5);
    CHECK(a.true_errors.cols == 5);
    CHECK(a.features.data == b.features.data);
    CHECK(a.d == b.d);
}

TEST_CASE("intercept tuning lands prevalence near one half") {
    Rng rng(11);
    SemSpec s = sample_spec(10, 1.5, rng);
    Rng tune_rng(13);
    tune_label_intercept(s, tune_rng);
    Rng gen(17);
    GeneratedData d = generate(s, 20000, gen);
    double prev = std::accumulate(d.d.begin(), d.d.end(), 0) / 20000.0;
    CHECK(prev == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("declared skeleton matches how the data is wired") {
    Rng rng(19);
    SemSpec s = sample_spec(5, 1.6, rng);
    auto edges = s.skeleton_edges();
    for (auto [a, b] : edges) {
        CHECK(a < b);
        CHECK(a >= 0);
        CHECK(b < 5);
    }
    // target's output index is within range and consistent
    int t = s.target_output_index();
    CHECK(t >= 0);
    CHECK(t < 5);
    CHECK(s.permutation[s.target] == t);
}

TEST_CASE("ground-truth attributions rank the label's drivers first on average") {
    Rng rng(23);
    SemSpec s = sample_spec(5, 1.5, rng);
    tune_label_intercept(s, rng);
    Rng gen(29);
    GeneratedData data = generate(s, 400, gen);
    Rng gt(31);
    ShapleyMatrix S = ground_truth_shapley(s, data.true_errors, gt, 20000);
    CHECK(S.values.rows == 400);
    CHECK(S.values.cols == 4);

    // mean |phi| of true parents of the label should beat that of non-parents
    std::vector<int> slot_to_col(5, -1);
    int col = 0;
    for (int slot = 0; slot < 5; ++slot) {
        if (slot != s.target_output_index()) slot_to_col[slot] = col++;
    }
    double parent_mass = 0.0, other_mass = 0.0;
    int n_parent = 0, n_other = 0;
    for (int j = 0; j < 5; ++j) {
        if (j == s.target) continue;
        int c = slot_to_col[s.permutation[j]];
        double m = 0.0;
        for (std::size_t r = 0; r < 400; ++r) m += std::abs(S.values.at(r, c));
        if (s.edge(j, s.target)) {
            parent_mass += m;
            ++n_parent;
        } else {
            other_mass += m;
            ++n_other;
        }
    }
    REQUIRE(n_parent > 0);
    if (n_other > 0) {
        CHECK(parent_mass / n_parent > other_mass / n_other);
    }
}
