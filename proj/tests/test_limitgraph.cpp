#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "critlab/limitgraph.hpp"
#include "critlab/stats.hpp"

using namespace critlab;

TEST_CASE("lambda_11 closed form: 3 pi / 4 at alpha=2/3, mu=cF=1") {
    HubKernel k;
    k.kind = HubKernel::grg;
    k.alpha = 2.0 / 3.0;
    k.mu = 1.0;
    k.cF = 1.0;
    const double target = 3.0 * M_PI / 4.0;
    const double got = lambda_ij(1, 1, 1.0, k);
    CHECK(std::abs(got - target) / target < 1e-6);
}

TEST_CASE("lambda scaling: lambda_ij(lambda) = lambda^2 lambda_ij(1)") {
    HubKernel k;
    k.alpha = 2.0 / 3.0;
    k.mu = 1.5;
    k.cF = 1.2;
    const double base = lambda_ij(2, 3, 1.0, k);
    CHECK(lambda_ij(2, 3, 0.3, k) == doctest::Approx(0.09 * base));
    CHECK(lambda_ij(2, 3, 2.0, k) == doctest::Approx(4.0 * base));
}

TEST_CASE("monotone in the hub index for both kernels") {
    for (auto kind : {HubKernel::grg, HubKernel::ecm}) {
        HubKernel k;
        k.kind = kind;
        k.alpha = 2.0 / 3.0;
        k.mu = 3.0;
        k.cF = 1.0;
        const double l11 = lambda_ij(1, 1, 0.3, k);
        const double l12 = lambda_ij(1, 2, 0.3, k);
        const double l13 = lambda_ij(1, 3, 0.3, k);
        CHECK(l12 < l11);
        CHECK(l13 < l12);
        // theta stays in (0,1) and decreases in i and x
        CHECK(k.theta(1, 0.5) < 1.0);
        CHECK(k.theta(1, 0.5) > 0.0);
        CHECK(k.theta(2, 0.5) < k.theta(1, 0.5));
        CHECK(k.theta(1, 1.5) < k.theta(1, 0.5));
    }
}

TEST_CASE("lambda matrix is symmetric by construction") {
    HubKernel k;
    k.alpha = 2.0 / 3.0;
    k.mu = 2.0;
    k.cF = 1.0;
    const LambdaMatrix m = lambda_matrix(5, 0.3, k);
    for (int i = 1; i <= 5; ++i) {
        CHECK(m.at(i, i) == 0.0);
        for (int j = 1; j <= 5; ++j)
            if (i != j) CHECK(m.at(i, j) == doctest::Approx(m.at(j, i)));
    }
}

TEST_CASE("K=1 yields no edges ever") {
    Rng rng = make_rng(120);
    HubKernel k;
    const TruncatedLimitGraph g = sample_g_infty(1, 0.3, k, rng);
    CHECK(g.edges.empty());
}

TEST_CASE("edge multiplicity mean matches lambda_12 within 3 SE") {
    Rng rng = make_rng(121);
    HubKernel k;
    k.alpha = 2.0 / 3.0;
    k.mu = 1.0;
    k.cF = 1.0;
    const LambdaMatrix m = lambda_matrix(3, 0.4, k);
    const int N = 100000;
    std::vector<double> counts;
    for (int r = 0; r < N; ++r) {
        const TruncatedLimitGraph g = sample_g_infty(m, rng);
        int c12 = 0;
        for (const auto& [i, j, mult] : g.edges)
            if (i == 1 && j == 2) c12 = mult;
        counts.push_back(double(c12));
    }
    const auto ms = mean_se(counts);
    CHECK(std::abs(ms.mean - m.at(1, 2)) <= 3.0 * ms.se);
}

TEST_CASE("small lambda: edge probability bounded by the intensity sum") {
    Rng rng = make_rng(122);
    HubKernel k;
    k.alpha = 2.0 / 3.0;
    k.mu = 3.0;
    k.cF = 1.0;
    const LambdaMatrix m = lambda_matrix(6, 0.02, k);
    double total = 0.0;
    for (double v : m.upper) total += v;
    const int N = 50000;
    int any = 0;
    for (int r = 0; r < N; ++r)
        if (!sample_g_infty(m, rng).edges.empty()) ++any;
    const double phat = double(any) / N;
    CHECK(phat <= total + 4.0 * std::sqrt(total / N) + 1e-6);
}

TEST_CASE("limit weights: empty graph returns sorted theta") {
    TruncatedLimitGraph g;
    g.K = 4;
    const auto theta = hub_theta(1.0, 2.0 / 3.0, 4);
    const auto w = limit_weights(g, theta);
    CHECK(w == theta); // already non-increasing
}

TEST_CASE("limit weights: a complete merge collapses to the full theta sum") {
    TruncatedLimitGraph g;
    g.K = 4;
    g.edges = {{1, 2, 1}, {2, 3, 1}, {3, 4, 2}};
    const auto theta = hub_theta(1.0, 2.0 / 3.0, 4);
    const auto w = limit_weights(g, theta);
    REQUIRE(w.size() == 1);
    double total = 0.0;
    for (double t : theta) total += t;
    CHECK(w[0] == doctest::Approx(total));
}

TEST_CASE("K-stability of the top weight between K=200 and K=400 at lambda=0.3") {
    HubKernel k;
    k.kind = HubKernel::grg;
    k.alpha = 2.0 / 3.0;
    k.mu = 3.0;
    k.cF = 1.0;
    const LambdaMatrix m200 = lambda_matrix(200, 0.3, k, 1e-6);
    const LambdaMatrix m400 = lambda_matrix(400, 0.3, k, 1e-6);
    Rng rng = make_rng(123);
    const int N = 20000;
    std::vector<double> top200, top400, tail_frac;
    const auto th200 = hub_theta(1.0, k.alpha, 200);
    const auto th400 = hub_theta(1.0, k.alpha, 400);
    for (int r = 0; r < N; ++r) {
        top200.push_back(limit_weights(sample_g_infty(m200, rng), th200).front());
        const auto w = limit_weights(sample_g_infty(m400, rng), th400);
        top400.push_back(w.front());
        double all = 0.0, tail = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            all += w[i] * w[i];
            if (i >= 200) tail += w[i] * w[i];
        }
        tail_frac.push_back(tail / all);
    }
    const double med200 = median(top200), med400 = median(top400);
    CHECK(std::abs(med200 - med400) / med400 < 0.02);

    // empirical square-summability proxy: ranks beyond K/2 carry under 5%
    CHECK(mean_se(tail_frac).mean < 0.05);
}
