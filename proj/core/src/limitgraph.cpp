#include "critlab/limitgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "critlab/quadrature.hpp"

namespace critlab {

double HubKernel::ci(int i) const {
    return cF * cF * std::pow(static_cast<double>(i), -alpha);
}

double HubKernel::theta(int i, double x) const {
    const double z = ci(i) * std::pow(x, -alpha);
    if (kind == grg) return z / (mu + z);
    return -std::expm1(-z / mu);
}

double lambda_ij(int i, int j, double lambda, const HubKernel& kernel, double rel_tol) {
    if (i < 1 || j < 1) throw std::invalid_argument("lambda_ij: hub indices are 1-based");
    if (2.0 * kernel.alpha <= 1.0)
        throw std::invalid_argument("lambda_ij: integrand needs 2 alpha > 1 (tau < 3)");

    auto integrand = [&](double x) { return kernel.theta(i, x) * kernel.theta(j, x); };

    // cut the tail where both thetas are below 1e-12; beyond it the integrand
    // is (c_i c_j / mu^2) x^-2alpha up to relative error ~1e-12
    const double cmax = std::max(kernel.ci(i), kernel.ci(j));
    const double xcut =
        std::pow(cmax / (kernel.mu * 1e-12), 1.0 / kernel.alpha);
    const double e = 2.0 * kernel.alpha;
    const double tail = kernel.ci(i) * kernel.ci(j) / (kernel.mu * kernel.mu) *
                        std::pow(xcut, 1.0 - e) / (e - 1.0);

    // rough scale for converting the relative tolerance into an absolute one
    const double scale = std::max(1e-300, integrand(1.0) + tail);
    const double tol = rel_tol * scale;

    QuadResult head = integrate_adaptive(integrand, 0.0, 1.0, tol / 2.0);
    double value = head.value;
    bool converged = head.converged;

    // decade panels over [1, xcut]
    double lo = 1.0;
    while (lo < xcut) {
        const double hi = std::min(lo * 10.0, xcut);
        QuadResult part = integrate_adaptive(integrand, lo, hi, tol / 64.0);
        value += part.value;
        converged = converged && part.converged;
        lo = hi;
    }
    value += tail;

    if (!converged)
        throw std::runtime_error("lambda_ij: quadrature failed to reach tolerance");
    return lambda * lambda * value;
}

double LambdaMatrix::at(int i, int j) const {
    if (i == j) return 0.0;
    const int a = std::min(i, j) - 1, b = std::max(i, j) - 1;
    // index within the strict upper triangle of a K x K matrix
    const std::int64_t row_start =
        static_cast<std::int64_t>(a) * K - static_cast<std::int64_t>(a) * (a + 1) / 2;
    return upper[row_start + (b - a - 1)];
}

LambdaMatrix lambda_matrix(int K, double lambda, const HubKernel& kernel, double rel_tol) {
    if (K < 1) throw std::invalid_argument("lambda_matrix: K must be >= 1");
    LambdaMatrix m;
    m.K = K;
    m.lambda = lambda;
    m.upper.resize(static_cast<std::size_t>(K) * (K - 1) / 2);
    std::size_t idx = 0;
    for (int i = 1; i <= K; ++i)
        for (int j = i + 1; j <= K; ++j) m.upper[idx++] = lambda_ij(i, j, lambda, kernel, rel_tol);
    return m;
}

TruncatedLimitGraph sample_g_infty(const LambdaMatrix& lam, Rng& rng) {
    TruncatedLimitGraph g;
    g.K = lam.K;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t idx = 0;
    for (int i = 1; i <= lam.K; ++i) {
        for (int j = i + 1; j <= lam.K; ++j) {
            const double mean = lam.upper[idx++];
            // cheap zero test first: most pairs carry negligible intensity
            if (unif(rng) < std::exp(-mean)) continue;
            int extra = 0; // multiplicity beyond the first arrival
            if (mean > 0.0) {
                // conditional Poisson: resample until positive (mean is small
                // throughout the acceptance grid, so this loop is short)
                std::poisson_distribution<int> pois(mean);
                int v = 0;
                do {
                    v = pois(rng);
                } while (v == 0);
                extra = v - 1;
            }
            g.edges.emplace_back(i, j, 1 + extra);
        }
    }
    return g;
}

TruncatedLimitGraph sample_g_infty(int K, double lambda, const HubKernel& kernel,
                                   Rng& rng) {
    return sample_g_infty(lambda_matrix(K, lambda, kernel), rng);
}

std::vector<double> limit_weights(const TruncatedLimitGraph& g,
                                  const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) < g.K)
        throw std::invalid_argument("limit_weights: theta shorter than hub count");
    std::vector<int> parent(g.K);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [i, j, mult] : g.edges) {
        (void)mult;
        const int a = find(i - 1), b = find(j - 1);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<double> mass(g.K, 0.0);
    for (int v = 0; v < g.K; ++v) mass[find(v)] += theta[v];
    std::vector<double> weights;
    for (int v = 0; v < g.K; ++v)
        if (find(v) == v) weights.push_back(mass[v]);
    std::sort(weights.begin(), weights.end(), std::greater<double>());
    return weights;
}

std::vector<double> hub_theta(double cF, double alpha, int K) {
    std::vector<double> theta(K);
    for (int i = 1; i <= K; ++i)
        theta[i - 1] = cF * std::pow(static_cast<double>(i), -alpha);
    return theta;
}

} // namespace critlab
