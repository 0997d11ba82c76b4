#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grci/mi.hpp"
#include "grci/rng.hpp"
#include "test_util.hpp"

using namespace grci;

TEST_CASE("digamma matches reference values") {
    // Abramowitz & Stegun: psi(1) = -gamma, psi(2) = 1 - gamma, psi(1/2) = -gamma - 2 ln 2
    const double gamma = 0.5772156649015329;
    CHECK(digamma(1.0) == doctest::Approx(-gamma).epsilon(1e-10));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - gamma).epsilon(1e-10));
    CHECK(digamma(0.5) == doctest::Approx(-gamma - 2.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(digamma(10.0) == doctest::Approx(2.251752589066721).epsilon(1e-10));
    // recurrence psi(x+1) = psi(x) + 1/x
    CHECK(digamma(5.3) == doctest::Approx(digamma(4.3) + 1.0 / 4.3).epsilon(1e-10));
}

TEST_CASE("jittered ranks are a permutation and respect strict order") {
    std::vector<double> v{3.0, 1.0, 2.0, 0.5, 9.0};
    auto r = jittered_ranks(v);
    std::vector<int> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 5; ++i) CHECK(sorted[i] == i);
    CHECK(r[3] == 0);
    CHECK(r[4] == 4);
    CHECK(r[0] == 3);
}

TEST_CASE("jittered ranks break ties deterministically by content") {
    std::vector<double> v{1.0, 1.0, 1.0, 2.0};
    auto r1 = jittered_ranks(v);
    auto r2 = jittered_ranks(v);
    CHECK(r1 == r2);
    CHECK(r1[3] == 3);
    std::vector<int> lows{r1[0], r1[1], r1[2]};
    std::sort(lows.begin(), lows.end());
    CHECK(lows == std::vector<int>{0, 1, 2});
}

TEST_CASE("mutual information of independent samples is near zero") {
    Rng rng(21);
    std::size_t n = 2000;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
    }
    MiEstimate est = knn_mi(a, b, 10);
    CHECK(std::abs(est.value) < 0.05);
    CHECK(est.k == 10);
}

TEST_CASE("mutual information matches the Gaussian closed form") {
    // I(X;Y) = -0.5 ln(1 - rho^2) and the rank transform leaves MI invariant
    for (double rho : {0.3, 0.6, 0.9}) {
        Rng rng(100 + static_cast<int>(rho * 10));
        std::size_t n = 4000;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            double z1 = rng.normal();
            double z2 = rng.normal();
            a[i] = z1;
            b[i] = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
        }
        double truth = -0.5 * std::log(1.0 - rho * rho);
        MiEstimate est = knn_mi(a, b, 10);
        CHECK(est.value == doctest::Approx(truth).epsilon(0.15));
    }
}

TEST_CASE("mutual information is symmetric in its arguments") {
    Rng rng(33);
    std::size_t n = 500;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform();
        b[i] = a[i] * a[i] + 0.1 * rng.normal();
    }
    CHECK(knn_mi(a, b, 10).value == doctest::Approx(knn_mi(b, a, 10).value).epsilon(1e-12));
}

TEST_CASE("mutual information is invariant to strictly monotone maps") {
    Rng rng(44);
    std::size_t n = 800;
    std::vector<double> a(n), b(n), ae(n), be(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal();
        b[i] = 0.7 * a[i] + rng.normal();
        ae[i] = std::exp(a[i]);
        be[i] = b[i] * b[i] * b[i] + 2.0 * b[i];
    }
    double base = knn_mi(a, b, 10).value;
    double mapped = knn_mi(ae, be, 10).value;
    CHECK(base == doctest::Approx(mapped).epsilon(1e-9));
}

TEST_CASE("ranked estimator agrees with a direct pairwise implementation") {
    Rng rng(55);
    std::size_t n = 300;
    int k = 5;
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal();
        b[i] = 0.8 * a[i] + 0.6 * rng.normal();
    }
    auto rx = jittered_ranks(a);
    auto ry = jittered_ranks(b);

    // O(n^2) reference: Chebyshev kth neighbour distance, strict ball counts
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d;
        d.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            d.push_back(std::max(std::abs(double(rx[i] - rx[j])), std::abs(double(ry[i] - ry[j]))));
        }
        std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
        double eps = d[k - 1];
        int nx = 0, ny = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (std::abs(double(rx[i] - rx[j])) < eps) ++nx;
            if (std::abs(double(ry[i] - ry[j])) < eps) ++ny;
        }
        acc += digamma(nx + 1) + digamma(ny + 1);
    }
    double reference = digamma(k) + digamma(double(n)) - acc / double(n);

    CHECK(ksg_mi_ranked(rx, ry, k) == doctest::Approx(reference).epsilon(1e-10));
}
