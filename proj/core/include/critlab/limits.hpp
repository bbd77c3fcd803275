// limits.hpp -- samplers for the three scaling-limit processes (Brownian
// motion with parabolic drift, thinned Levy, and the infinite-second-moment
// jump process), reflection, excursion extraction and Poisson marks.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "critlab/components.hpp" // UVector
#include "critlab/rng.hpp"

namespace critlab {

enum class ThetaClass { l3_not_l2, l2_not_l1 };

// Truncated hub-weight sequence theta_1 >= theta_2 >= ... > 0 with mu and an
// optional analytic tail-variance rate for the Brownian small-jump correction.
struct ThetaSequence {
    std::vector<double> theta;
    double mu = 1.0;
    ThetaClass cls = ThetaClass::l3_not_l2;
    double tail_sigma2 = 0.0; // variance rate of the truncated small jumps

    static ThetaSequence power_law(double cF, double alpha, int K, double mu,
                                   ThetaClass cls);
};

enum class TailMode { truncate, brownian };

// Path recorded on the uniform grid t_j = j dt. Exponential clocks are drawn
// exactly; only the recording is gridded, so values are exact at grid points
// (plus the independent Brownian tail when enabled).
struct LimitPath {
    double dt = 0.0;
    std::vector<double> values; // values[j] = S(j dt)
    std::vector<double> clocks; // realized xi_i for the jump processes
    TailMode tail = TailMode::truncate;

    double T() const { return dt * static_cast<double>(values.size() - 1); }
    std::size_t steps() const { return values.size(); }
};

// B(s) = (sqrt(eta)/mu) W(s) + lambda s - eta s^2 / (2 mu^3).
LimitPath simulate_bm_parabolic(double mu, double eta, double lambda, double T,
                                double dt, Rng& rng);

// S(t) = sum_i theta_i (1{xi_i <= t} - theta_i t / mu) + lambda t,
// xi_i ~ Exp(theta_i / mu). Brownian tail mode adds an independent Brownian
// path with variance rate theta.tail_sigma2.
LimitPath simulate_thinned_levy(const ThetaSequence& theta, double lambda, double T,
                                double dt, Rng& rng, TailMode tail = TailMode::truncate);

// S(t) = lambda sum_i theta_i 1{xi_i <= t} - 2t, xi_i ~ Exp(theta_i / mu);
// requires lambda > 0.
LimitPath simulate_isj(const ThetaSequence& theta, double lambda, double T, double dt,
                       Rng& rng);

// refl(S)(t) = S(t) - min_{u <= t} S(u).
LimitPath reflect(const LimitPath& path);

struct Excursion {
    std::int64_t l = 0, r = 0; // grid indices, refl zero at both ends
    double length = 0.0;
    double area = 0.0;         // integral of refl over [l, r)
    std::int64_t marks = 0;
    bool complete = true;      // false when cut off by the horizon T
};

struct MarkedExcursions {
    std::vector<Excursion> excursions;
    double dt = 0.0;
    bool ordered = false; // true after sort by length descending
    double zero_set_length = 0.0;

    void order_by_length();
};

// Maximal intervals where the reflected path stays positive; marks left empty.
MarkedExcursions excursions(const LimitPath& path);

// Mark intensity constants: beta = 1/mu for the parabolic regime, and
// sum theta_i^2 / mu^2 for the infinite-second-moment regime.
struct MarkRate {
    double rate = 0.0;
    static MarkRate beta_over_mu(double mu) { return {1.0 / mu}; }
    static MarkRate theta_ratio(const ThetaSequence& th);
    static MarkRate unit() { return {1.0}; }
};

// Inhomogeneous Poisson thinning on the grid: each step contributes
// Poisson(rate * refl(t) * dt) marks; per-excursion totals are returned.
MarkedExcursions marks(const LimitPath& path, MarkRate rate, Rng& rng);

enum class LimitRegime { bm_parabolic, thinned_levy, isj };

struct LimitParams {
    LimitRegime regime = LimitRegime::bm_parabolic;
    double mu = 1.0, eta = 1.0, lambda = 0.0;
    ThetaSequence theta;
    double T = 10.0, dt = 1e-3;
    TailMode tail = TailMode::truncate;
    MarkRate mark_rate{0.0}; // 0 disables marks
    int top_k = 4;
};

LimitPath simulate_limit(const LimitParams& par, Rng& rng);

struct ExcursionLawSample {
    std::vector<UVector> draws; // ordered (length, marks), truncated to top_k
    double pilot_incomplete_rate = 0.0;
    bool t_too_small = false; // pilot diagnostic: longest excursion often cut off
};

// iid draws of the ordered (excursion length, mark count) vector. A pilot run
// checks that the longest excursion ends before T in >= 99% of paths.
ExcursionLawSample excursion_law_sample(const LimitParams& par, int n_paths, Rng& rng);

// CSV writers: (t, S, refl) and (rank, length, area, marks).
void write_path_csv(const LimitPath& path, std::ostream& out);
void write_excursions_csv(const MarkedExcursions& exc, std::ostream& out);

} // namespace critlab
