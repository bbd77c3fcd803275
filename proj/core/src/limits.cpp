#include "critlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace critlab {

ThetaSequence ThetaSequence::power_law(double cF, double alpha, int K, double mu,
                                       ThetaClass cls) {
    ThetaSequence th;
    th.mu = mu;
    th.cls = cls;
    th.theta.resize(K);
    for (int i = 1; i <= K; ++i)
        th.theta[i - 1] = cF * std::pow(static_cast<double>(i), -alpha);
    // analytic tail-variance rate sum_{i>K} theta_i^3 / mu, by integral bracket
    const double e = 3.0 * alpha;
    if (e > 1.0) {
        const double c3 = cF * cF * cF;
        // sum_{i>K} i^-e in [int_{K+1}^inf, int_K^inf]; midpoint is accurate enough
        const double lo = std::pow(static_cast<double>(K + 1), 1.0 - e) / (e - 1.0);
        const double hi = std::pow(static_cast<double>(K), 1.0 - e) / (e - 1.0);
        th.tail_sigma2 = c3 * 0.5 * (lo + hi) / mu;
    }
    return th;
}

MarkRate MarkRate::theta_ratio(const ThetaSequence& th) {
    double s2 = 0.0;
    for (double t : th.theta) s2 += t * t;
    return {s2 / (th.mu * th.mu)};
}

LimitPath simulate_bm_parabolic(double mu, double eta, double lambda, double T,
                                double dt, Rng& rng) {
    if (mu <= 0.0 || eta <= 0.0 || dt <= 0.0 || T <= 0.0)
        throw std::invalid_argument("simulate_bm_parabolic: need mu, eta, dt, T > 0");
    const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
    LimitPath path;
    path.dt = dt;
    path.values.resize(steps + 1);
    const double sigma = std::sqrt(eta) / mu * std::sqrt(dt);
    const double drift_c = eta / (2.0 * mu * mu * mu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double wsum = 0.0;
    path.values[0] = 0.0;
    for (std::size_t j = 1; j <= steps; ++j) {
        wsum += sigma * gauss(rng);
        const double t = dt * static_cast<double>(j);
        path.values[j] = wsum + lambda * t - drift_c * t * t;
    }
    return path;
}

namespace {

// Shared recording of a jump process with constant drift slope: jumps of size
// jump_size[i] at exact clock times, values exact at grid points.
LimitPath record_jump_path(const std::vector<double>& clocks,
                           const std::vector<double>& jump_size, double slope,
                           double T, double dt) {
    const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
    LimitPath path;
    path.dt = dt;
    path.clocks = clocks;
    path.values.resize(steps + 1);

    std::vector<std::size_t> order(clocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return clocks[a] < clocks[b]; });

    double jumps = 0.0;
    std::size_t next = 0;
    path.values[0] = 0.0;
    for (std::size_t j = 1; j <= steps; ++j) {
        const double t = dt * static_cast<double>(j);
        while (next < order.size() && clocks[order[next]] <= t) {
            jumps += jump_size[order[next]];
            ++next;
        }
        path.values[j] = jumps + slope * t;
    }
    return path;
}

} // namespace

LimitPath simulate_thinned_levy(const ThetaSequence& theta, double lambda, double T,
                                double dt, Rng& rng, TailMode tail) {
    if (theta.theta.empty())
        throw std::invalid_argument("simulate_thinned_levy: empty theta sequence");
    std::vector<double> clocks(theta.theta.size());
    double slope = lambda;
    for (std::size_t i = 0; i < clocks.size(); ++i) {
        clocks[i] = exponential(rng, theta.theta[i] / theta.mu);
        slope -= theta.theta[i] * theta.theta[i] / theta.mu;
    }
    LimitPath path = record_jump_path(clocks, theta.theta, slope, T, dt);
    path.tail = tail;
    if (tail == TailMode::brownian) {
        const double sigma = std::sqrt(theta.tail_sigma2 * dt);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double wsum = 0.0;
        for (std::size_t j = 1; j < path.values.size(); ++j) {
            wsum += sigma * gauss(rng);
            path.values[j] += wsum;
        }
    }
    return path;
}

LimitPath simulate_isj(const ThetaSequence& theta, double lambda, double T, double dt,
                       Rng& rng) {
    if (lambda <= 0.0) throw std::invalid_argument("simulate_isj: lambda must be > 0");
    if (theta.theta.empty()) throw std::invalid_argument("simulate_isj: empty theta");
    std::vector<double> clocks(theta.theta.size());
    std::vector<double> jumps(theta.theta.size());
    for (std::size_t i = 0; i < clocks.size(); ++i) {
        clocks[i] = exponential(rng, theta.theta[i] / theta.mu);
        jumps[i] = lambda * theta.theta[i];
    }
    return record_jump_path(clocks, jumps, -2.0, T, dt);
}

LimitPath reflect(const LimitPath& path) {
    LimitPath out;
    out.dt = path.dt;
    out.clocks = path.clocks;
    out.tail = path.tail;
    out.values.resize(path.values.size());
    double run_min = path.values.empty() ? 0.0 : path.values[0];
    for (std::size_t j = 0; j < path.values.size(); ++j) {
        run_min = std::min(run_min, path.values[j]);
        out.values[j] = path.values[j] - run_min;
    }
    return out;
}

void MarkedExcursions::order_by_length() {
    std::sort(excursions.begin(), excursions.end(),
              [](const Excursion& a, const Excursion& b) { return a.length > b.length; });
    ordered = true;
}

MarkedExcursions excursions(const LimitPath& path) {
    MarkedExcursions out;
    out.dt = path.dt;
    const LimitPath refl = reflect(path);
    const std::size_t T = refl.values.size();

    std::int64_t zeros = 0;
    std::size_t j = 0;
    while (j + 1 < T) {
        if (refl.values[j + 1] > 0.0) {
            // excursion starts at the zero j and ends at the first grid return
            // to zero; area integrates refl over [l, r)
            Excursion exc;
            exc.l = static_cast<std::int64_t>(j);
            double area = 0.0;
            std::size_t k = j + 1;
            while (k < T && refl.values[k] > 0.0) {
                area += refl.values[k] * path.dt;
                ++k;
            }
            exc.complete = (k < T);
            exc.r = static_cast<std::int64_t>(exc.complete ? k : T - 1);
            if (!exc.complete) area -= refl.values[T - 1] * path.dt;
            exc.area = area;
            exc.length = static_cast<double>(exc.r - exc.l) * path.dt;
            out.excursions.push_back(exc);
            j = k;
        } else {
            ++zeros;
            ++j;
        }
    }
    out.zero_set_length = static_cast<double>(zeros) * path.dt;
    return out;
}

MarkedExcursions marks(const LimitPath& path, MarkRate rate, Rng& rng) {
    MarkedExcursions out = excursions(path);
    if (rate.rate <= 0.0) return out;
    const LimitPath refl = reflect(path);
    for (auto& exc : out.excursions) {
        std::int64_t count = 0;
        for (std::int64_t j = exc.l; j < exc.r; ++j) {
            const double mean = rate.rate * refl.values[j] * path.dt;
            if (mean > 0.0)
                count += std::poisson_distribution<std::int64_t>(mean)(rng);
        }
        exc.marks = count;
    }
    return out;
}

LimitPath simulate_limit(const LimitParams& par, Rng& rng) {
    switch (par.regime) {
        case LimitRegime::bm_parabolic:
            return simulate_bm_parabolic(par.mu, par.eta, par.lambda, par.T, par.dt, rng);
        case LimitRegime::thinned_levy:
            return simulate_thinned_levy(par.theta, par.lambda, par.T, par.dt, rng, par.tail);
        case LimitRegime::isj:
            return simulate_isj(par.theta, par.lambda, par.T, par.dt, rng);
    }
    throw std::logic_error("simulate_limit: unknown regime");
}

ExcursionLawSample excursion_law_sample(const LimitParams& par, int n_paths, Rng& rng) {
    ExcursionLawSample out;

    // pilot: the longest excursion must end before the horizon
    const int pilot = std::min(100, std::max(20, n_paths / 10));
    int bad = 0;
    for (int r = 0; r < pilot; ++r) {
        const LimitPath path = simulate_limit(par, rng);
        MarkedExcursions exc = excursions(path);
        exc.order_by_length();
        if (!exc.excursions.empty() && !exc.excursions.front().complete) ++bad;
    }
    out.pilot_incomplete_rate = static_cast<double>(bad) / pilot;
    out.t_too_small = out.pilot_incomplete_rate > 0.01;

    out.draws.reserve(n_paths);
    for (int r = 0; r < n_paths; ++r) {
        const LimitPath path = simulate_limit(par, rng);
        MarkedExcursions exc =
            par.mark_rate.rate > 0.0 ? marks(path, par.mark_rate, rng) : excursions(path);
        exc.order_by_length();
        std::vector<std::pair<double, std::int64_t>> pairs;
        const int k = std::min<int>(par.top_k, static_cast<int>(exc.excursions.size()));
        for (int i = 0; i < k; ++i)
            pairs.emplace_back(exc.excursions[i].length, exc.excursions[i].marks);
        out.draws.push_back(order_u0(std::move(pairs)));
    }
    return out;
}

void write_path_csv(const LimitPath& path, std::ostream& out) {
    const LimitPath refl = reflect(path);
    out << "t,S,refl\n";
    for (std::size_t j = 0; j < path.values.size(); ++j)
        out << path.dt * static_cast<double>(j) << ',' << path.values[j] << ','
            << refl.values[j] << '\n';
}

void write_excursions_csv(const MarkedExcursions& exc, std::ostream& out) {
    out << "rank,length,area,marks\n";
    for (std::size_t i = 0; i < exc.excursions.size(); ++i)
        out << i + 1 << ',' << exc.excursions[i].length << ',' << exc.excursions[i].area
            << ',' << exc.excursions[i].marks << '\n';
}

} // namespace critlab
