#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "critlab/degrees.hpp"
#include "critlab/stats.hpp"

using namespace critlab;

namespace {

// independent oracle: degrees by direct evaluation of (cF n / i)^(1/(tau-1))
std::vector<std::int64_t> powerlaw_oracle(double tau, std::int64_t n, double cF) {
    std::vector<std::int64_t> d(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        const double v = std::pow(cF * double(n) / double(i), 1.0 / (tau - 1.0));
        d[i - 1] = std::max<std::int64_t>(1, std::int64_t(std::floor(v + 1e-9)));
    }
    return d;
}

// E[D] oracle: tail sum 1 + sum_{k>=2} min(1, cF k^-(tau-1))
double mean_oracle(double tau, double cF) {
    double m = 1.0;
    for (std::int64_t k = 2; k < 40000000; ++k) {
        const double p = std::min(1.0, cF * std::pow(double(k), -(tau - 1.0)));
        m += p;
        if (p < 1e-13) break;
    }
    return m;
}

} // namespace

TEST_CASE("scaling constants by regime") {
    auto s34 = scaling_constants(3.5, 100000);
    CHECK(s34.alpha == doctest::Approx(0.4));
    CHECK(s34.rho == doctest::Approx(0.6));
    CHECK(s34.eta == doctest::Approx(0.2));

    auto s23 = scaling_constants(2.5, 100000);
    CHECK(s23.alpha == doctest::Approx(2.0 / 3.0));
    CHECK(s23.rho == doctest::Approx(1.0 / 3.0));
    CHECK(s23.eta == doctest::Approx(1.0 / 3.0));

    auto s = scaling_constants(3.5, 1000000);
    CHECK(s.a_n == doctest::Approx(std::pow(10.0, 2.4)));
    CHECK(s.b_n == doctest::Approx(std::pow(10.0, 3.6)));
    CHECK(s.c_n == doctest::Approx(std::pow(10.0, 1.2)));

    // degenerate finite-third-moment triple
    auto sg4 = scaling_constants(5.0, 1000);
    CHECK(sg4.alpha == doctest::Approx(1.0 / 3.0));
    CHECK(sg4.rho == doctest::Approx(2.0 / 3.0));
    CHECK(sg4.eta == doctest::Approx(1.0 / 3.0));
    CHECK(sg4.b_n == doctest::Approx(std::pow(1000.0, 2.0 / 3.0)));

    CHECK_THROWS(scaling_constants(3.0, 100));
    CHECK_THROWS(scaling_constants(2.0, 100));
    CHECK_THROWS(scaling_constants(4.0, 100));
    CHECK_THROWS(scaling_constants(3.5, 0));
}

TEST_CASE("exponent identities on a tau grid") {
    for (double tau : {2.1, 2.5, 2.9, 3.1, 3.5, 3.9}) {
        auto s = scaling_constants(tau, 1000);
        CHECK(s.alpha == doctest::Approx(1.0 / (tau - 1.0)));
        CHECK(s.rho == doctest::Approx(s.alpha * (tau - 2.0)));
        CHECK(s.eta == doctest::Approx(s.alpha * std::abs(tau - 3.0)));
        if (tau > 3.0) CHECK(s.rho == doctest::Approx(s.alpha + s.eta));
    }
}

TEST_CASE("power-law degrees tau=2.5 n=8 against hand evaluation") {
    const DegreeSequence d = build_power_law_degrees(2.5, 8, 1.0, 0.0);
    const auto oracle = powerlaw_oracle(2.5, 8, 1.0);
    // hand evaluation of (8/i)^(2/3): 4, 2.52, 1.92, 1.59, 1.37, 1.21, 1.09, 1
    const std::vector<std::int64_t> expected{4, 2, 1, 1, 1, 1, 1, 1};
    CHECK(oracle == expected);
    CHECK(d.degrees == expected); // total 12, even: no parity fix
    CHECK(d.total == 12);
    CHECK(d.sorted);
}

TEST_CASE("power-law degrees tau=3.5: d_1 = floor(10^1.6) = 39") {
    const DegreeSequence d = build_power_law_degrees(3.5, 10000, 1.0, 0.0);
    const auto oracle = powerlaw_oracle(3.5, 10000, 1.0);
    CHECK(oracle[0] == 39);
    CHECK((d.degrees[0] == 39 || d.degrees[0] == 40)); // parity fix may touch d_1
    CHECK(d.total % 2 == 0);
}

TEST_CASE("window perturbation only inflates low-degree mass slightly") {
    const std::int64_t n = 10000;
    const DegreeSequence d0 = build_power_law_degrees(3.5, n, 1.0, 0.0);
    const DegreeSequence d1 = build_power_law_degrees(3.5, n, 1.0, 1.0);
    std::int64_t changed = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        CHECK(d1.degrees[i] >= d0.degrees[i]); // inflation is monotone
        if (d1.degrees[i] != d0.degrees[i]) ++changed;
    }
    const auto scal = scaling_constants(3.5, n);
    // delta_{i,n}(lambda) moves O(n^{1-eta}) low-degree entries
    CHECK(changed > 0);
    CHECK(double(changed) <= 5.0 * double(n) / scal.c_n * std::log(double(n)));
}

TEST_CASE("criticality: exact nu_n") {
    auto scal = scaling_constants(5.0, 4);
    auto r1 = criticality(DegreeSequence::from({3, 1, 1, 1}), scal, 2);
    CHECK(r1.nu_num == 6);
    CHECK(r1.nu_den == 6);
    CHECK(r1.nu_n == doctest::Approx(1.0));

    auto r2 = criticality(DegreeSequence::from({2, 2, 2}), scal, 2);
    CHECK(r2.nu_n == doctest::Approx(1.0));

    CHECK_THROWS(criticality(DegreeSequence::from({0, 0}), scal, 1));
}

TEST_CASE("criticality of the 75/25 mixture: nu=1, mu=1.5, eta-parameter 2.25") {
    const std::int64_t n = 10000;
    std::vector<std::int64_t> degs(n, 1);
    for (std::int64_t i = 0; i < n / 4; ++i) degs[i] = 3;
    const DegreeSequence d = DegreeSequence::from(std::move(degs));
    const auto scal = scaling_constants(5.0, n);
    const auto rep = criticality(d, scal, 3);
    CHECK(rep.nu_n == doctest::Approx(1.0));
    CHECK(rep.mu_hat == doctest::Approx(1.5));
    CHECK(rep.sigma2_hat == doctest::Approx(3.0));
    CHECK(rep.sigma3_hat == doctest::Approx(7.5));
    CHECK(rep.sigma3_hat * rep.mu_hat - rep.sigma2_hat * rep.sigma2_hat ==
          doctest::Approx(2.25));
    CHECK(rep.lambda_hat == doctest::Approx(0.0));
}

TEST_CASE("parity: every constructor output has even total") {
    Rng rng = make_rng(7);
    for (double tau : {2.5, 3.5}) {
        for (std::int64_t n : {7LL, 100LL, 1001LL}) {
            CHECK(build_power_law_degrees(tau, n, 1.0, 0.0).total % 2 == 0);
            CHECK(sample_iid_degrees(tau, 1.0, n, rng).total % 2 == 0);
        }
    }
}

TEST_CASE("iid degree sample: mean within 3 SE of the tail-sum oracle") {
    Rng rng = make_rng(11);
    const std::int64_t n = 10000;
    const double tau = 3.5;
    const DegreeSequence d = sample_iid_degrees(tau, 1.0, n, rng);
    const double mean = double(d.total) / double(n);
    const double target = mean_oracle(tau, 1.0);
    double s2 = 0.0;
    for (auto v : d.degrees) s2 += double(v) * double(v);
    const double se = std::sqrt(s2 / n) / std::sqrt(double(n));
    CHECK(std::abs(mean - target) <= 3.0 * se + 2.0 / n); // parity adds <= 1 half-edge
    CHECK(d.degrees.front() >= 1);
}

TEST_CASE("iid degrees: largest degree has nondegenerate spread across replicates") {
    Rng rng = make_rng(23);
    const std::int64_t n = 2000;
    const auto scal = scaling_constants(3.5, n);
    std::vector<double> d1_scaled;
    for (int r = 0; r < 300; ++r) {
        const DegreeSequence d = sample_iid_degrees(3.5, 1.0, n, rng);
        d1_scaled.push_back(double(d.degrees[0]) / scal.a_n);
    }
    const auto ms = mean_se(d1_scaled);
    const double sd = ms.se * std::sqrt(double(ms.n));
    CHECK(sd / ms.mean > 0.1); // Gamma_1 is Exp(1): genuinely spread out
}

TEST_CASE("single iid draw is a valid degree sequence") {
    Rng rng = make_rng(3);
    const DegreeSequence d = sample_iid_degrees(2.5, 1.0, 1, rng);
    CHECK(d.n() == 1);
    CHECK(d.degrees[0] >= 1);
}

TEST_CASE("moment diagnostics: constant sequence tail formula") {
    const std::int64_t n = 64;
    const std::int64_t c = 3;
    DegreeSequence d = DegreeSequence::from(std::vector<std::int64_t>(n, c));
    const auto scal = scaling_constants(3.5, n);
    const auto diag = moment_diagnostics(d, scal, 16);
    CHECK(diag.mean == doctest::Approx(double(c)));
    for (std::size_t k = 0; k < diag.K_grid.size(); ++k) {
        const double expected = double(n - diag.K_grid[k]) * std::pow(double(c), 3.0) /
                                std::pow(scal.a_n, 3.0);
        CHECK(diag.tail[k] == doctest::Approx(expected));
    }
    CHECK(diag.monotone_decay);
}

TEST_CASE("moment diagnostics: power-law tails match direct summation and decay") {
    const std::int64_t n = 100000;
    {
        const DegreeSequence d = build_power_law_degrees(3.5, n, 1.0, 0.0);
        const auto scal = scaling_constants(3.5, n);
        const auto diag = moment_diagnostics(d, scal, 100);
        CHECK(diag.monotone_decay);
        // direct-summation oracle at K = 100
        double tail = 0.0;
        for (std::int64_t i = 100; i < n; ++i) {
            const double dv = double(d.degrees[i]);
            tail += dv * dv * dv;
        }
        tail /= std::pow(scal.a_n, 3.0);
        CHECK(diag.tail.back() == doctest::Approx(tail));
        CHECK(diag.tail.back() < diag.tail.front());
    }
    {
        const DegreeSequence d = build_power_law_degrees(2.5, n, 1.0, 0.0);
        const auto scal = scaling_constants(2.5, n);
        const auto diag = moment_diagnostics(d, scal, 100);
        double tail = 0.0;
        for (std::int64_t i = 100; i < n; ++i)
            tail += double(d.degrees[i]) * double(d.degrees[i]);
        tail /= std::pow(double(n), 2.0 * scal.alpha);
        CHECK(diag.tail.back() == doctest::Approx(tail));
        CHECK(diag.tail.back() < diag.tail.front());
    }
}

TEST_CASE("window stability: c_n (nu_n - nu_inf) bounded across n for lambda=0") {
    const double tau = 3.5, cF = 0.4;
    double nu_big = 0.0;
    {
        const DegreeSequence d = build_power_law_degrees(tau, 1000000, cF, 0.0);
        nu_big = criticality(d, scaling_constants(tau, 1000000), 1).nu_n;
    }
    for (std::int64_t n : {1000LL, 10000LL, 100000LL}) {
        const DegreeSequence d = build_power_law_degrees(tau, n, cF, 0.0);
        const auto scal = scaling_constants(tau, n);
        const auto rep = criticality(d, scal, 1);
        CHECK(std::abs(scal.c_n * (rep.nu_n - nu_big)) < 10.0);
    }
}

TEST_CASE("critical_cf pins the window location") {
    const double tau = 3.5;
    const std::int64_t n = 20000;
    const double cf = critical_cf(tau, n, 0.0);
    const DegreeSequence d = build_power_law_degrees(tau, n, cf, 0.0);
    const auto rep = criticality(d, scaling_constants(tau, n), 1);
    CHECK(std::abs(rep.lambda_hat) < 0.05);
}

TEST_CASE("serialization round trips") {
    const DegreeSequence d = build_power_law_degrees(2.5, 50, 1.0, 0.0);
    std::stringstream ss;
    write_degrees_text(d, ss);
    const DegreeSequence back = read_degrees_text(ss);
    CHECK(back.degrees == d.degrees);

    const std::string json = degrees_to_json(d);
    const DegreeSequence fromj = degrees_from_json(json);
    CHECK(fromj.degrees == d.degrees);
    CHECK(fromj.total == d.total);
}
