// limitgraph.hpp -- the single-edge-constraint limit object: a Poisson
// multigraph on hub indices with kernel-dependent intensities lambda_ij.
#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "critlab/rng.hpp"

namespace critlab {

// theta_i(x) evaluators for the two single-edge kernels, with c_i = cF^2 i^-alpha:
//   grg: c_i x^-alpha / (mu + c_i x^-alpha)
//   ecm: 1 - exp(-c_i x^-alpha / mu)
struct HubKernel {
    enum Kind { grg, ecm } kind = grg;
    double alpha = 2.0 / 3.0;
    double mu = 1.0;
    double cF = 1.0;

    double ci(int i) const;
    double theta(int i, double x) const;
};

// lambda_ij = lambda^2 int_0^inf theta_i(x) theta_j(x) dx, by adaptive
// quadrature split at x = 1 with the power-law tail integrated analytically
// once theta drops below 1e-12. Throws if the tolerance cannot be met.
double lambda_ij(int i, int j, double lambda, const HubKernel& kernel,
                 double rel_tol = 1e-8);

struct LambdaMatrix {
    int K = 0;
    double lambda = 0.0;
    std::vector<double> upper; // row-major strict upper triangle, 1-based hubs

    double at(int i, int j) const; // i != j, 1-based
};

LambdaMatrix lambda_matrix(int K, double lambda, const HubKernel& kernel,
                           double rel_tol = 1e-8);

struct TruncatedLimitGraph {
    int K = 0;
    std::vector<std::tuple<int, int, int>> edges; // (i, j, multiplicity), 1-based
};

// Independent Poisson(lambda_ij) multiplicities; no self-edges.
TruncatedLimitGraph sample_g_infty(const LambdaMatrix& lam, Rng& rng);
TruncatedLimitGraph sample_g_infty(int K, double lambda, const HubKernel& kernel,
                                   Rng& rng);

// Ordered per-component sums of theta over hubs; theta[i-1] is the weight of
// hub i (callers pass theta_i = cF i^-alpha).
std::vector<double> limit_weights(const TruncatedLimitGraph& g,
                                  const std::vector<double>& theta);

std::vector<double> hub_theta(double cF, double alpha, int K);

} // namespace critlab
