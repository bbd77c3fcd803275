#include "critlab/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace critlab {

namespace {

// floor with a one-ulp nudge so that exact integer powers (e.g. 8^(2/3) = 4)
// do not lose a unit to rounding noise in pow/exp.
std::int64_t floor_nudged(double x) {
    return static_cast<std::int64_t>(std::floor(x * (1.0 + 4e-14) + 1e-12));
}

} // namespace

DegreeSequence DegreeSequence::from(std::vector<std::int64_t> d) {
    DegreeSequence seq;
    seq.degrees = std::move(d);
    for (std::int64_t v : seq.degrees) {
        if (v < 0) throw std::invalid_argument("degrees must be non-negative");
    }
    seq.recompute_total();
    seq.fix_parity();
    seq.sorted = std::is_sorted(seq.degrees.begin(), seq.degrees.end(),
                                std::greater<std::int64_t>());
    return seq;
}

void DegreeSequence::recompute_total() {
    total = 0;
    for (std::int64_t v : degrees) total += v;
}

void DegreeSequence::fix_parity() {
    if (degrees.empty()) return;
    if (total % 2 != 0) {
        degrees[0] += 1;
        total += 1;
    }
}

WeightSequence WeightSequence::from(std::vector<double> w) {
    WeightSequence seq;
    seq.weights = std::move(w);
    seq.total = 0.0;
    for (double v : seq.weights) {
        if (v < 0.0) throw std::invalid_argument("weights must be non-negative");
        seq.total += v;
    }
    return seq;
}

ScalingConstants scaling_constants(double tau, std::int64_t n,
                                   std::function<double(double)> L) {
    if (n < 1) throw std::invalid_argument("scaling_constants: n must be >= 1");
    if (tau <= 2.0 || tau == 3.0 || tau == 4.0)
        throw std::invalid_argument("scaling_constants: tau must lie in (2,3) or (3,4) or (4,inf)");

    ScalingConstants s;
    s.tau = tau;
    s.n = n;
    if (tau > 4.0) {
        // Finite-third-moment regime: Erdos-Renyi scales, L forced to 1.
        s.alpha = 1.0 / 3.0;
        s.rho = 2.0 / 3.0;
        s.eta = 1.0 / 3.0;
        s.slowly_varying = nullptr;
    } else {
        s.alpha = 1.0 / (tau - 1.0);
        s.rho = (tau - 2.0) / (tau - 1.0);
        s.eta = (tau > 3.0 ? (tau - 3.0) : (3.0 - tau)) / (tau - 1.0);
        s.slowly_varying = std::move(L);
    }
    const double nn = static_cast<double>(n);
    const double Ln = s.L(nn);
    s.a_n = std::pow(nn, s.alpha) * Ln;
    s.b_n = std::pow(nn, s.rho) / Ln;
    s.c_n = std::pow(nn, s.eta) / (Ln * Ln);
    return s;
}

CriticalityReport criticality(const DegreeSequence& d, const ScalingConstants& scal,
                              int K) {
    if (d.degrees.empty() || d.total <= 0)
        throw std::invalid_argument("criticality: empty or zero degree sequence");

    CriticalityReport rep;
    __int128 num = 0;
    double s2 = 0.0, s3 = 0.0;
    for (std::int64_t v : d.degrees) {
        num += static_cast<__int128>(v) * (v - 1);
        const double dv = static_cast<double>(v);
        s2 += dv * dv;
        s3 += dv * dv * dv;
    }
    if (num > static_cast<__int128>(INT64_MAX))
        throw std::overflow_error("criticality: sum d(d-1) exceeds 2^63");
    rep.nu_num = static_cast<std::int64_t>(num);
    rep.nu_den = d.total;
    rep.nu_n = static_cast<double>(rep.nu_num) / static_cast<double>(rep.nu_den);
    const double n = static_cast<double>(d.n());
    rep.mu_hat = static_cast<double>(d.total) / n;
    rep.sigma2_hat = s2 / n;
    rep.sigma3_hat = s3 / n;
    rep.lambda_hat = scal.c_n * (rep.nu_n - 1.0);

    std::vector<std::int64_t> top(d.degrees);
    std::sort(top.begin(), top.end(), std::greater<std::int64_t>());
    const int kmax = std::min<std::int64_t>(K, d.n());
    rep.theta_hat.reserve(kmax);
    for (int i = 0; i < kmax; ++i)
        rep.theta_hat.push_back(static_cast<double>(top[i]) / scal.a_n);

    // third_moment_tail[k] = a_n^-3 sum_{i > k} d_(i)^3 over the sorted order.
    const double an3 = scal.a_n * scal.a_n * scal.a_n;
    std::vector<double> suffix(kmax + 1, 0.0);
    double acc = 0.0;
    for (std::size_t i = top.size(); i-- > 0;) {
        const double dv = static_cast<double>(top[i]);
        if (static_cast<std::int64_t>(i) >= kmax) {
            acc += dv * dv * dv;
        }
    }
    suffix[kmax] = acc;
    for (int k = kmax - 1; k >= 0; --k) {
        const double dv = static_cast<double>(top[k]);
        suffix[k] = suffix[k + 1] + dv * dv * dv;
    }
    rep.third_moment_tail.assign(kmax + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) rep.third_moment_tail[k] = suffix[k] / an3;
    return rep;
}

MomentDiagnostics moment_diagnostics(const DegreeSequence& d,
                                     const ScalingConstants& scal, int K) {
    if (!d.sorted)
        throw std::invalid_argument("moment_diagnostics: sequence must be sorted non-increasing");
    MomentDiagnostics diag;
    const double n = static_cast<double>(d.n());
    double s1 = 0.0, s2 = 0.0;
    for (std::int64_t v : d.degrees) {
        s1 += static_cast<double>(v);
        s2 += static_cast<double>(v) * static_cast<double>(v);
    }
    diag.mean = s1 / n;
    diag.second_moment = s2 / n;

    for (int k = 1; k <= K; k *= 2) diag.K_grid.push_back(k);
    if (diag.K_grid.empty() || diag.K_grid.back() != K) diag.K_grid.push_back(K);

    // tau in (3,4) (and tau > 4): a_n^-3 tail of third powers.
    // tau in (2,3): n^-2alpha tail of squares.
    const bool third = !scal.tau_in_23();
    const double scale = third ? scal.a_n * scal.a_n * scal.a_n
                               : std::pow(n, 2.0 * scal.alpha);
    for (int k : diag.K_grid) {
        double tail = 0.0;
        for (std::int64_t i = k; i < d.n(); ++i) {
            const double dv = static_cast<double>(d.degrees[i]);
            tail += third ? dv * dv * dv : dv * dv;
        }
        diag.tail.push_back(tail / scale);
    }
    diag.monotone_decay = std::is_sorted(diag.tail.rbegin(), diag.tail.rend());
    return diag;
}

DegreeSequence build_power_law_degrees(double tau, std::int64_t n, double cF,
                                       double lambda) {
    if (n <= 0) throw std::invalid_argument("build_power_law_degrees: n must be positive");
    if (cF <= 0.0) throw std::invalid_argument("build_power_law_degrees: cF must be positive");
    if (tau <= 2.0 || tau >= 4.0 || tau == 3.0)
        throw std::invalid_argument("build_power_law_degrees: tau must lie in (2,3) or (3,4)");

    const ScalingConstants scal = scaling_constants(tau, n);
    const double inflate = 1.0 + lambda / scal.c_n;
    const double inv_exp = 1.0 / (tau - 1.0);

    DegreeSequence seq;
    seq.degrees.resize(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        const double g = std::pow(cF * static_cast<double>(n) / static_cast<double>(i), inv_exp);
        seq.degrees[i - 1] = std::max<std::int64_t>(1, floor_nudged(g * inflate));
    }
    seq.recompute_total();
    seq.fix_parity();
    seq.sorted = true; // non-increasing by construction; parity fix touches only d_1
    return seq;
}

WeightSequence power_law_weights(double tau, std::int64_t n, double cF) {
    if (n <= 0 || cF <= 0.0 || tau <= 2.0 || tau >= 3.0)
        throw std::invalid_argument("power_law_weights: need tau in (2,3), n,cF > 0");
    const double alpha = 1.0 / (tau - 1.0);
    std::vector<double> w(n);
    const double na = std::pow(static_cast<double>(n), alpha);
    for (std::int64_t i = 1; i <= n; ++i)
        w[i - 1] = cF * na * std::pow(static_cast<double>(i), -alpha);
    return WeightSequence::from(std::move(w));
}

DegreeSequence sample_iid_degrees(double tau, double cF, std::int64_t n, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("sample_iid_degrees: n must be positive");
    if (tau <= 2.0 || tau >= 4.0 || tau == 3.0)
        throw std::invalid_argument("sample_iid_degrees: tau must lie in (2,3) or (3,4)");
    // Gamma coupling: Gamma_i = E_1 + ... + E_i, degrees G^-1(Gamma_i/Gamma_{n+1})
    // are the non-increasing order statistics of n iid draws.
    std::vector<double> gamma(n + 1);
    double acc = 0.0;
    for (std::int64_t i = 0; i <= n; ++i) {
        acc += exponential(rng, 1.0);
        gamma[i] = acc;
    }
    const double inv_exp = 1.0 / (tau - 1.0);
    DegreeSequence seq;
    seq.degrees.resize(n);
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = gamma[i] / gamma[n];
        const double g = std::pow(cF / u, inv_exp);
        seq.degrees[i] = std::max<std::int64_t>(1, floor_nudged(g));
    }
    seq.recompute_total();
    seq.fix_parity();
    seq.sorted = true;
    return seq;
}

double power_law_mean(double tau, double cF) {
    // D = max(1, floor((cF/U)^(1/(tau-1)))):  E[D] = 1 + sum_{k>=2} min(1, cF k^-(tau-1)).
    double mean = 1.0;
    for (std::int64_t k = 2;; ++k) {
        const double p = std::min(1.0, cF * std::pow(static_cast<double>(k), -(tau - 1.0)));
        mean += p;
        if (p < 1e-14 * mean) break;
        if (k > 100000000) break;
    }
    return mean;
}

double critical_cf(double tau, std::int64_t n, double lambda_window) {
    const ScalingConstants scal = scaling_constants(tau, n);
    auto window_location = [&](double cF) {
        const DegreeSequence d = build_power_law_degrees(tau, n, cF, 0.0);
        const CriticalityReport rep = criticality(d, scal, 1);
        return rep.lambda_hat;
    };
    double lo = 1e-6, hi = 1.0;
    while (window_location(hi) < lambda_window) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("critical_cf: bisection bracket failed");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (window_location(mid) < lambda_window)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

void write_degrees_text(const DegreeSequence& d, std::ostream& out) {
    for (std::int64_t v : d.degrees) out << v << '\n';
}

DegreeSequence read_degrees_text(std::istream& in) {
    std::vector<std::int64_t> d;
    std::int64_t v;
    while (in >> v) d.push_back(v);
    DegreeSequence seq;
    seq.degrees = std::move(d);
    seq.recompute_total();
    if (seq.total % 2 != 0)
        throw std::runtime_error("read_degrees_text: odd total degree in file");
    seq.sorted = std::is_sorted(seq.degrees.begin(), seq.degrees.end(),
                                std::greater<std::int64_t>());
    return seq;
}

std::string degrees_to_json(const DegreeSequence& d) {
    nlohmann::json j;
    j["n"] = d.n();
    j["degrees"] = d.degrees;
    return j.dump();
}

DegreeSequence degrees_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    DegreeSequence seq;
    seq.degrees = j.at("degrees").get<std::vector<std::int64_t>>();
    if (j.contains("n") && j["n"].get<std::int64_t>() != seq.n())
        throw std::runtime_error("degrees_from_json: n does not match degree count");
    seq.recompute_total();
    seq.sorted = std::is_sorted(seq.degrees.begin(), seq.degrees.end(),
                                std::greater<std::int64_t>());
    return seq;
}

} // namespace critlab
