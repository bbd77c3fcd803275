#include "critlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace critlab {

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

MeanSE mean_se(const std::vector<double>& values) {
    MeanSE r;
    r.n = static_cast<std::int64_t>(values.size());
    if (r.n == 0) return r;
    double sum = 0.0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(r.n);
    if (r.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - r.mean) * (v - r.mean);
        r.se = std::sqrt(ss / static_cast<double>(r.n - 1) / static_cast<double>(r.n));
    }
    return r;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical(double level, std::int64_t na, std::int64_t nb) {
    const double c = std::sqrt(-0.5 * std::log(level / 2.0));
    return c * std::sqrt(static_cast<double>(na + nb) /
                         (static_cast<double>(na) * static_cast<double>(nb)));
}

namespace {

// Regularized lower incomplete gamma P(s,x) by series; upper by continued
// fraction (Lentz). Standard numerics, double precision.
double gamma_p_series(double s, double x) {
    double sum = 1.0 / s;
    double term = sum;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 1000; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace

double gamma_q(double s, double x) {
    if (x < 0.0 || s <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return 1.0 - gamma_p_series(s, x);
    return gamma_q_cf(s, x);
}

double chi2_sf(double x, int dof) { return gamma_q(0.5 * dof, 0.5 * x); }

double chi2_critical(double level, int dof) {
    double lo = 0.0, hi = 1.0;
    while (chi2_sf(hi, dof) > level) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_sf(mid, dof) > level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Chi2Result chi2_gof(const std::vector<std::int64_t>& counts,
                    const std::vector<double>& probs) {
    if (counts.size() != probs.size())
        throw std::invalid_argument("chi2_gof: counts/probs length mismatch");
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    Chi2Result r;
    r.dof = -1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expect = probs[i] * static_cast<double>(total);
        if (expect <= 0.0) {
            if (counts[i] != 0)
                throw std::invalid_argument("chi2_gof: observation in a zero-probability cell");
            continue;
        }
        const double diff = static_cast<double>(counts[i]) - expect;
        r.stat += diff * diff / expect;
        ++r.dof;
    }
    if (r.dof < 1) r.dof = 1;
    r.p_value = chi2_sf(r.stat, r.dof);
    return r;
}

double tv_counts(const std::map<std::string, std::int64_t>& a, std::int64_t na,
                 const std::map<std::string, std::int64_t>& b, std::int64_t nb) {
    double tv = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            tv += static_cast<double>(ia->second) / na;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            tv += static_cast<double>(ib->second) / nb;
            ++ib;
        } else {
            tv += std::abs(static_cast<double>(ia->second) / na -
                           static_cast<double>(ib->second) / nb);
            ++ia;
            ++ib;
        }
    }
    return tv / 2.0;
}

double tv_binned(const std::vector<double>& a, const std::vector<double>& b, int bins) {
    if (a.empty() || b.empty() || bins < 1)
        throw std::invalid_argument("tv_binned: empty sample or no bins");
    double lo = a[0], hi = a[0];
    for (double v : a) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : b) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) return 0.0;
    std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
    auto bin_of = [&](double v) {
        int k = static_cast<int>((v - lo) / (hi - lo) * bins);
        return std::min(k, bins - 1);
    };
    for (double v : a) pa[bin_of(v)] += 1.0 / static_cast<double>(a.size());
    for (double v : b) pb[bin_of(v)] += 1.0 / static_cast<double>(b.size());
    double tv = 0.0;
    for (int k = 0; k < bins; ++k) tv += std::abs(pa[k] - pb[k]);
    return tv / 2.0;
}

std::string size_vector_key(std::vector<std::int64_t> sizes) {
    std::sort(sizes.begin(), sizes.end(), std::greater<std::int64_t>());
    std::string key;
    for (std::int64_t s : sizes) {
        key += std::to_string(s);
        key += '|';
    }
    return key;
}

} // namespace critlab
