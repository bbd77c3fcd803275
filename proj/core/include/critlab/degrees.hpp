// degrees.hpp -- degree/weight sequences, scaling constants and criticality
// diagnostics for the three power-law regimes.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "critlab/rng.hpp"

namespace critlab {

// Integer degrees, non-negative, with cached total. The parity invariant
// (even total) is restored by constructors via a dummy half-edge on vertex 1.
struct DegreeSequence {
    std::vector<std::int64_t> degrees;
    std::int64_t total = 0; // ell_n = sum of degrees
    bool sorted = false;    // true when non-increasing

    std::int64_t n() const { return static_cast<std::int64_t>(degrees.size()); }

    static DegreeSequence from(std::vector<std::int64_t> d);

    void fix_parity();      // add one half-edge to vertex 1 if total is odd
    void recompute_total();
};

struct WeightSequence {
    std::vector<double> weights;
    double total = 0.0;

    std::int64_t n() const { return static_cast<std::int64_t>(weights.size()); }

    static WeightSequence from(std::vector<double> w);
};

// Regime exponents and the derived scales a_n, b_n, c_n for a given n.
//   tau in (3,4): alpha = 1/(tau-1), rho = (tau-2)/(tau-1), eta = (tau-3)/(tau-1)
//   tau in (2,3): alpha = 1/(tau-1), rho = (tau-2)/(tau-1), eta = (3-tau)/(tau-1)
//   tau > 4:     degenerate triple alpha = eta = 1/3, rho = 2/3, L == 1
struct ScalingConstants {
    double tau = 0.0;
    double alpha = 0.0, rho = 0.0, eta = 0.0;
    std::int64_t n = 0;
    double a_n = 0.0, b_n = 0.0, c_n = 0.0;
    std::function<double(double)> slowly_varying; // empty handle means L == 1

    double L(double x) const { return slowly_varying ? slowly_varying(x) : 1.0; }
    bool tau_in_34() const { return tau > 3.0 && tau < 4.0; }
    bool tau_in_23() const { return tau > 2.0 && tau < 3.0; }
    bool tau_gt4() const { return tau > 4.0; }
};

ScalingConstants scaling_constants(double tau, std::int64_t n,
                                   std::function<double(double)> L = nullptr);

// nu_n and friends. nu_n is exact (128-bit integer arithmetic), the rest are
// floating point summaries.
struct CriticalityReport {
    double nu_n = 0.0;
    std::int64_t nu_num = 0; // sum d_i (d_i - 1), exact
    std::int64_t nu_den = 0; // ell_n, exact
    double mu_hat = 0.0;     // ell_n / n
    double sigma2_hat = 0.0; // n^-1 sum d_i^2
    double sigma3_hat = 0.0; // n^-1 sum d_i^3
    double lambda_hat = 0.0; // c_n (nu_n - 1)
    std::vector<double> theta_hat;         // d_i / a_n, i <= K (sorted desc)
    std::vector<double> third_moment_tail; // a_n^-3 sum_{i>k} d_i^3, k = 0..K
};

CriticalityReport criticality(const DegreeSequence& d, const ScalingConstants& scal,
                              int K);

struct MomentDiagnostics {
    double mean = 0.0;          // n^-1 sum d_i
    double second_moment = 0.0; // n^-1 sum d_i^2
    std::vector<int> K_grid;
    std::vector<double> tail;   // regime-scaled tail sums at each K
    bool monotone_decay = false;
};

MomentDiagnostics moment_diagnostics(const DegreeSequence& d,
                                     const ScalingConstants& scal, int K);

// d_i = floor((cF * n / i)^(1/(tau-1)) * (1 + lambda/c_n)), minimum degree 1,
// parity fix on vertex 1. The (1 + lambda/c_n) inflation realizes the window
// perturbation delta_{i,n}(lambda).
DegreeSequence build_power_law_degrees(double tau, std::int64_t n, double cF,
                                       double lambda);

// Weights w_i = (cF^(tau-1) * n / i)^(1/(tau-1)) so that n^-alpha w_i = cF i^-alpha.
WeightSequence power_law_weights(double tau, std::int64_t n, double cF);

// Order statistics of n iid draws with tail P(D >= x) = min(1, cF x^-(tau-1)),
// via the Gamma coupling d_(i) = G^-1(Gamma_i / Gamma_{n+1}). Parity fixed.
DegreeSequence sample_iid_degrees(double tau, double cF, std::int64_t n, Rng& rng);

// Mean of the integer power-law degree law above (exact tail sum), used as a
// test oracle and by callers sizing experiments.
double power_law_mean(double tau, double cF);

// Bisect cF so that c_n * (nu_n - 1) lands on lambda_window (tuning a sequence
// into a prescribed location of the critical window). The target map
// cF -> nu_n(cF) is monotone.
double critical_cf(double tau, std::int64_t n, double lambda_window);

// Serialization: one integer per line, and JSON {"n":..., "degrees":[...]}.
void write_degrees_text(const DegreeSequence& d, std::ostream& out);
DegreeSequence read_degrees_text(std::istream& in);
std::string degrees_to_json(const DegreeSequence& d);
DegreeSequence degrees_from_json(const std::string& text);

} // namespace critlab
