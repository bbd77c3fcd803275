#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "critlab/limits.hpp"
#include "critlab/stats.hpp"

using namespace critlab;

namespace {

LimitPath path_of(std::vector<double> values, double dt = 1.0) {
    LimitPath p;
    p.dt = dt;
    p.values = std::move(values);
    return p;
}

} // namespace

TEST_CASE("bm parabolic: mean of B(2) near -2 for mu=eta=1, lambda=0") {
    Rng rng = make_rng(60);
    const int N = 20000;
    std::vector<double> b2;
    for (int r = 0; r < N; ++r) {
        const LimitPath p = simulate_bm_parabolic(1.0, 1.0, 0.0, 2.0, 0.01, rng);
        b2.push_back(p.values.back());
    }
    const auto ms = mean_se(b2);
    CHECK(std::abs(ms.mean - (-2.0)) <= 3.0 * ms.se);
}

TEST_CASE("bm parabolic: lambda only shifts the path by lambda*t under shared noise") {
    const LimitPath p0 = [&] {
        Rng rng = make_rng(61);
        return simulate_bm_parabolic(1.5, 2.25, 0.0, 1.0, 0.01, rng);
    }();
    const LimitPath p1 = [&] {
        Rng rng = make_rng(61);
        return simulate_bm_parabolic(1.5, 2.25, 2.0, 1.0, 0.01, rng);
    }();
    for (std::size_t j = 0; j < p0.values.size(); ++j) {
        const double t = p0.dt * double(j);
        CHECK(p1.values[j] - p0.values[j] == doctest::Approx(2.0 * t).epsilon(1e-9));
    }
}

TEST_CASE("bm parabolic: variance of B(1) near eta/mu^2") {
    Rng rng = make_rng(62);
    const int N = 40000;
    std::vector<double> b1;
    for (int r = 0; r < N; ++r)
        b1.push_back(simulate_bm_parabolic(1.0, 1.0, 0.0, 1.0, 0.01, rng).values.back());
    const auto ms = mean_se(b1);
    double var = 0.0;
    for (double v : b1) var += (v - ms.mean) * (v - ms.mean);
    var /= double(N - 1);
    const double se_var = var * std::sqrt(2.0 / double(N - 1));
    CHECK(std::abs(var - 1.0) <= 3.0 * se_var);
}

TEST_CASE("thinned Levy: mean of S(1) within 3 SE of the analytic value") {
    Rng rng = make_rng(63);
    ThetaSequence th;
    th.theta = {1.0, 1.0};
    th.mu = 1.0;
    const int N = 100000;
    std::vector<double> s1;
    for (int r = 0; r < N; ++r)
        s1.push_back(simulate_thinned_levy(th, 0.0, 1.0, 0.05, rng).values.back());
    const auto ms = mean_se(s1);
    const double target = 2.0 * (1.0 - std::exp(-1.0)) - 2.0; // -0.7357588823
    CHECK(std::abs(ms.mean - target) <= 3.0 * ms.se);
}

TEST_CASE("thinned Levy with a single clock: one jump of size theta at xi") {
    Rng rng = make_rng(64);
    ThetaSequence th;
    th.theta = {1.0};
    th.mu = 1.0;
    const LimitPath p = simulate_thinned_levy(th, 0.0, 5.0, 0.01, rng);
    REQUIRE(p.clocks.size() == 1);
    const double xi = p.clocks[0];
    // grid increments: slope -theta^2/mu everywhere, plus the jump at xi
    const double slope = -1.0;
    for (std::size_t j = 1; j < p.values.size(); ++j) {
        const double t0 = p.dt * double(j - 1), t1 = p.dt * double(j);
        const double incr = p.values[j] - p.values[j - 1];
        if (xi > t0 && xi <= t1)
            CHECK(incr == doctest::Approx(1.0 + slope * p.dt));
        else
            CHECK(incr == doctest::Approx(slope * p.dt));
    }
}

TEST_CASE("thinned Levy brownian tail: added variance matches the supplied rate") {
    const double sigma2 = 0.5;
    ThetaSequence th;
    th.theta = {1.0, 1.0};
    th.mu = 1.0;
    th.tail_sigma2 = sigma2;
    const int N = 40000;
    std::vector<double> diff;
    for (int r = 0; r < N; ++r) {
        // shared clocks: same seed, tail on/off; difference is the pure tail
        Rng r1 = make_rng(65, r);
        Rng r2 = make_rng(65, r);
        const LimitPath a = simulate_thinned_levy(th, 0.0, 1.0, 0.02, r1, TailMode::truncate);
        const LimitPath b = simulate_thinned_levy(th, 0.0, 1.0, 0.02, r2, TailMode::brownian);
        diff.push_back(b.values.back() - a.values.back());
    }
    const auto ms = mean_se(diff);
    double var = 0.0;
    for (double v : diff) var += (v - ms.mean) * (v - ms.mean);
    var /= double(N - 1);
    const double se_var = var * std::sqrt(2.0 / double(N - 1));
    CHECK(std::abs(var - sigma2) <= 3.0 * se_var);
}

TEST_CASE("isj process: analytic mean, -2 drift between jumps, positive jumps") {
    Rng rng = make_rng(66);
    ThetaSequence th;
    th.theta = {1.0, 0.5};
    th.mu = 1.0;
    th.cls = ThetaClass::l2_not_l1;
    const int N = 100000;
    std::vector<double> s1;
    for (int r = 0; r < N; ++r)
        s1.push_back(simulate_isj(th, 2.0, 1.0, 0.05, rng).values.back());
    const auto ms = mean_se(s1);
    const double target =
        2.0 * ((1.0 - std::exp(-1.0)) + 0.5 * (1.0 - std::exp(-0.5))) - 2.0;
    CHECK(std::abs(ms.mean - target) <= 3.0 * ms.se);

    const LimitPath p = simulate_isj(th, 2.0, 3.0, 0.01, rng);
    for (std::size_t j = 1; j < p.values.size(); ++j) {
        const double incr = p.values[j] - p.values[j - 1];
        // either pure drift or drift plus a positive jump
        CHECK((incr == doctest::Approx(-2.0 * p.dt) || incr > -2.0 * p.dt));
    }
    CHECK_THROWS(simulate_isj(th, 0.0, 1.0, 0.1, rng));
    CHECK_THROWS(simulate_isj(th, -1.0, 1.0, 0.1, rng));
}

TEST_CASE("isj with tiny lambda stays near -2t") {
    Rng rng = make_rng(67);
    ThetaSequence th;
    th.theta = {1.0, 0.5, 0.25};
    th.mu = 1.0;
    const double lam = 1e-9;
    const LimitPath p = simulate_isj(th, lam, 2.0, 0.01, rng);
    for (std::size_t j = 0; j < p.values.size(); ++j) {
        const double t = p.dt * double(j);
        CHECK(std::abs(p.values[j] + 2.0 * t) <= lam * 1.75 + 1e-12);
    }
}

TEST_CASE("reflect: constant path, the worked example, idempotence, nonnegativity") {
    const LimitPath c = reflect(path_of({1.0, 1.0, 1.0}));
    for (double v : c.values) CHECK(v == doctest::Approx(0.0));

    const LimitPath r = reflect(path_of({0, 1, -1, 0, -2}));
    CHECK(r.values == std::vector<double>{0, 1, 0, 1, 0});

    Rng rng = make_rng(68);
    ThetaSequence th;
    th.theta = {1.0, 0.7};
    th.mu = 1.0;
    const LimitPath p = simulate_thinned_levy(th, 0.5, 3.0, 0.01, rng);
    const LimitPath refl1 = reflect(p);
    const LimitPath refl2 = reflect(refl1);
    for (std::size_t j = 0; j < refl1.values.size(); ++j) {
        CHECK(refl1.values[j] >= 0.0);
        CHECK(refl2.values[j] == doctest::Approx(refl1.values[j]));
    }
}

TEST_CASE("excursions of the worked path: lengths (2,2), areas (1,1)") {
    const MarkedExcursions exc = excursions(path_of({0, 1, -1, 0, -2}));
    REQUIRE(exc.excursions.size() == 2);
    CHECK(exc.excursions[0].length == doctest::Approx(2.0));
    CHECK(exc.excursions[1].length == doctest::Approx(2.0));
    CHECK(exc.excursions[0].area == doctest::Approx(1.0));
    CHECK(exc.excursions[1].area == doctest::Approx(1.0));
    CHECK(exc.zero_set_length == doctest::Approx(0.0));
}

TEST_CASE("no excursions on a monotone decreasing path") {
    const MarkedExcursions exc = excursions(path_of({0, -1, -2, -3}));
    CHECK(exc.excursions.empty());
    CHECK(exc.zero_set_length == doctest::Approx(3.0));
}

TEST_CASE("excursion lengths and the zero set partition the horizon") {
    Rng rng = make_rng(69);
    ThetaSequence th;
    th.theta = {1.0, 0.6, 0.4};
    th.mu = 1.0;
    for (int r = 0; r < 50; ++r) {
        const LimitPath p = simulate_thinned_levy(th, 0.3, 4.0, 0.01, rng);
        const MarkedExcursions exc = excursions(p);
        double total = exc.zero_set_length;
        for (const auto& e : exc.excursions) total += e.length;
        CHECK(total == doctest::Approx(p.T()).epsilon(1e-9));
    }
}

TEST_CASE("excursions agree with a direct running-minimum implementation") {
    Rng rng = make_rng(70);
    ThetaSequence th;
    th.theta = {1.2, 0.5};
    th.mu = 1.0;
    for (int r = 0; r < 40; ++r) {
        const LimitPath p = simulate_thinned_levy(th, 0.4, 3.0, 0.02, rng);
        const MarkedExcursions exc = excursions(p);
        // direct: strictly-above-running-minimum runs of the raw path
        std::vector<std::pair<std::int64_t, std::int64_t>> direct;
        double run_min = 0.0;
        std::int64_t start = -1;
        for (std::size_t j = 0; j < p.values.size(); ++j) {
            run_min = std::min(run_min, p.values[j]);
            const bool above = p.values[j] > run_min;
            if (above && start < 0) start = static_cast<std::int64_t>(j) - 1;
            if (!above && start >= 0) {
                direct.emplace_back(start, static_cast<std::int64_t>(j));
                start = -1;
            }
        }
        if (start >= 0)
            direct.emplace_back(start, static_cast<std::int64_t>(p.values.size()) - 1);
        REQUIRE(exc.excursions.size() == direct.size());
        for (std::size_t k = 0; k < direct.size(); ++k) {
            CHECK(exc.excursions[k].l == direct[k].first);
            CHECK(exc.excursions[k].r == direct[k].second);
        }
    }
}

TEST_CASE("marks: zero rate, conditional mean, independence across excursions") {
    Rng rng = make_rng(71);
    ThetaSequence th;
    th.theta = {1.5, 0.8};
    th.mu = 1.0;
    const LimitPath p = simulate_thinned_levy(th, 0.5, 6.0, 0.01, rng);

    const MarkedExcursions none = marks(p, MarkRate{0.0}, rng);
    for (const auto& e : none.excursions) CHECK(e.marks == 0);

    MarkedExcursions base = excursions(p);
    REQUIRE(base.excursions.size() >= 2);
    const double rate = 2.0;
    const int N = 100000;
    std::vector<double> m0, m1;
    for (int r = 0; r < N; ++r) {
        const MarkedExcursions me = marks(p, MarkRate{rate}, rng);
        m0.push_back(double(me.excursions[0].marks));
        m1.push_back(double(me.excursions[1].marks));
    }
    const auto ms0 = mean_se(m0);
    CHECK(std::abs(ms0.mean - rate * base.excursions[0].area) <= 3.0 * ms0.se);
    const auto ms1 = mean_se(m1);
    CHECK(std::abs(ms1.mean - rate * base.excursions[1].area) <= 3.0 * ms1.se);
    // sample covariance within noise of zero
    double cov = 0.0;
    for (int r = 0; r < N; ++r) cov += (m0[r] - ms0.mean) * (m1[r] - ms1.mean);
    cov /= double(N - 1);
    const double sd0 = ms0.se * std::sqrt(double(N));
    const double sd1 = ms1.se * std::sqrt(double(N));
    CHECK(std::abs(cov) <= 4.0 * sd0 * sd1 / std::sqrt(double(N)));
}

TEST_CASE("mark rate constructors") {
    CHECK(MarkRate::beta_over_mu(1.5).rate == doctest::Approx(2.0 / 3.0));
    ThetaSequence th;
    th.theta = {1.0, 0.5};
    th.mu = 2.0;
    CHECK(MarkRate::theta_ratio(th).rate == doctest::Approx(1.25 / 4.0));
}

TEST_CASE("excursion law draws: ordered lengths, positive, pilot diagnostic") {
    Rng rng = make_rng(72);
    LimitParams par;
    par.regime = LimitRegime::bm_parabolic;
    par.mu = 1.5;
    par.eta = 2.25;
    par.lambda = 0.0;
    par.T = 10.0;
    par.dt = 5e-3;
    par.top_k = 3;
    const ExcursionLawSample s = excursion_law_sample(par, 400, rng);
    CHECK(!s.t_too_small);
    for (const auto& u : s.draws) {
        REQUIRE(!u.pairs.empty());
        CHECK(u.pairs.front().first > 0.0);
        for (std::size_t i = 1; i < u.pairs.size(); ++i)
            CHECK(u.pairs[i - 1].first >= u.pairs[i].first);
    }

    // a tiny horizon trips the diagnostic
    LimitParams small = par;
    small.T = 0.2;
    const ExcursionLawSample warn = excursion_law_sample(small, 50, rng);
    CHECK(warn.t_too_small);
}

TEST_CASE("power-law theta helper tail rate is the analytic tail sum over mu") {
    const ThetaSequence th = ThetaSequence::power_law(1.0, 0.4, 100, 2.0, ThetaClass::l3_not_l2);
    REQUIRE(th.theta.size() == 100);
    CHECK(th.theta[0] == doctest::Approx(1.0));
    CHECK(th.theta[7] == doctest::Approx(std::pow(8.0, -0.4)));
    // direct summation to N plus the integral remainder beyond N
    const int N = 1000000;
    double direct = 0.0;
    for (int i = 101; i <= N; ++i) direct += std::pow(double(i), -1.2);
    direct += std::pow(double(N) + 0.5, -0.2) / 0.2;
    CHECK(th.tail_sigma2 == doctest::Approx(direct / 2.0).epsilon(0.001));
}
