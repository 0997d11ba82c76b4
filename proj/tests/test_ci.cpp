#include <doctest.h>

#include <cmath>

#include "grci/ci.hpp"
#include "grci/rng.hpp"
#include "test_util.hpp"

using namespace grci;

namespace {

struct Triple {
    std::vector<double> x, y, z;
};

// z -> x, z -> y; x and y independent given z
Triple common_cause(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Triple t;
    t.x.resize(n);
    t.y.resize(n);
    t.z.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = rng.uniform(-1.0, 1.0);
        t.z[i] = z;
        t.x[i] = z * z + 0.3 * rng.normal();
        t.y[i] = std::sin(3.0 * z) + 0.3 * rng.normal();
    }
    return t;
}

}  // namespace

TEST_CASE("marginal test keeps dependent pairs") {
    Rng rng(1);
    std::size_t n = 600;
    std::vector<double> x(n), y(n);
    Rng gen(101);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = gen.uniform(-1.0, 1.0);
        y[i] = x[i] * x[i] + 0.2 * gen.normal();
    }
    CiResult r = ci_test(x, y, {}, 0.1, 200, rng);
    CHECK_FALSE(r.independent);
    CHECK(r.p_value < 0.05);
}

TEST_CASE("marginal test releases independent pairs") {
    Rng rng(2);
    std::size_t n = 600;
    std::vector<double> x(n), y(n);
    Rng gen(202);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = gen.normal();
        y[i] = gen.normal();
    }
    CiResult r = ci_test(x, y, {}, 0.1, 200, rng);
    CHECK(r.independent);
    CHECK(r.p_value > 0.1);
}

TEST_CASE("conditioning on a common cause removes the dependence") {
    Triple t = common_cause(800, 77);
    Rng rng(3);
    CiResult marginal = ci_test(t.x, t.y, {}, 0.1, 200, rng);
    CHECK_FALSE(marginal.independent);

    Rng rng2(3);
    CiResult conditional = ci_test(t.x, t.y, {t.z}, 0.1, 200, rng2);
    CHECK(conditional.independent);
}

TEST_CASE("p-values are valid under the null (never below 1/(B+1))") {
    Rng gen(404);
    std::size_t n = 200;
    int rejections = 0;
    int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = gen.normal();
            y[i] = gen.normal();
        }
        Rng rng(1000 + trial);
        CiResult r = ci_test(x, y, {}, 0.1, 100, rng);
        CHECK(r.p_value >= 1.0 / 101.0);
        CHECK(r.p_value <= 1.0);
        if (!r.independent) ++rejections;
    }
    // level-0.1 test over 20 null draws; allow slack for estimator noise
    CHECK(rejections <= 6);
}

TEST_CASE("test result does not depend on argument order") {
    Triple t = common_cause(300, 88);
    Rng a(9);
    Rng b(9);
    CiResult r1 = ci_test(t.x, t.y, {t.z}, 0.1, 100, a);
    CiResult r2 = ci_test(t.y, t.x, {t.z}, 0.1, 100, b);
    CHECK(r1.statistic == doctest::Approx(r2.statistic).epsilon(1e-12));
    CHECK(r1.p_value == doctest::Approx(r2.p_value).epsilon(1e-12));
}

TEST_CASE("constant columns short-circuit to independence") {
    std::vector<double> x(50, 1.5);
    std::vector<double> y(50);
    Rng gen(7);
    for (double& v : y) v = gen.normal();
    Rng rng(4);
    CiResult r = ci_test(x, y, {}, 0.1, 100, rng);
    CHECK(r.independent);
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("residualizing on an empty set centers the rescaled column") {
    // (1,2,3,6) maps onto [0,1] as (0,.2,.4,1) with mean .4
    std::vector<double> y{1.0, 2.0, 3.0, 6.0};
    Rng rng(5);
    auto res = residualize(y, {}, rng);
    CHECK(res[0] == doctest::Approx(-0.4));
    CHECK(res[1] == doctest::Approx(-0.2));
    CHECK(res[2] == doctest::Approx(0.0));
    CHECK(res[3] == doctest::Approx(0.6));
}

TEST_CASE("residualizing removes a smooth conditional mean") {
    Rng gen(606);
    std::size_t n = 1000;
    std::vector<double> z(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = gen.uniform(0.0, 1.0);
        y[i] = 4.0 * z[i] * z[i] + 0.1 * gen.normal();
    }
    Rng rng(6);
    auto res = residualize(y, {z}, rng);
    // residuals should be uncorrelated with the regressor
    CHECK(std::abs(testutil::pearson(res, z)) < 0.05);
}
