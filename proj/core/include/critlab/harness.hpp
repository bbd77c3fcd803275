// harness.hpp -- reproducible Monte Carlo experiment runner plus the
// statistical comparators and near-critical diagnostics built on top of it.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "critlab/degrees.hpp"
#include "critlab/percolation.hpp"
#include "critlab/stats.hpp"

namespace critlab {

// Experiment description, readable from JSON or a flat TOML subset
// (key = value lines; arrays in brackets; '#' comments; section headers are
// ignored). Replicate i of size-index k uses the derived seed
// derive_seed(master, k * replicates + i).
struct ExperimentSpec {
    std::string model = "cm"; // cm, cm_perc, grg, grg_perc, ecm, ecm_perc, um
    double tau = 3.5;
    double cF = 1.0;
    double lambda = 0.0;
    double p = -1.0;          // explicit percolation p; < 0 means "use regime"
    std::string regime;       // tau_gt4, tau_34, tau_23_CM, tau_23_single
    std::vector<std::int64_t> n_grid{1000};
    int replicates = 1;
    std::uint64_t seed = 1;
    std::vector<std::string> outputs{"sizes"}; // sizes surplus diameter susceptibilities
    std::string out_dir = ".";

    std::string canonical_json() const;
    std::uint64_t hash() const;

    static ExperimentSpec from_json(const std::string& text);
    static ExperimentSpec from_toml(const std::string& text);
    static ExperimentSpec from_file(const std::string& path);
};

struct ReplicateRow {
    std::int64_t n = 0;
    int replicate = 0;
    bool failed = false;
    std::int64_t components = 0;
    std::int64_t c1_size = 0, c2_size = 0;
    std::int64_t c1_edges = 0, c1_surplus = 0, c1_diameter = -1;
    double c1_weight = 0.0;
    double s2_star = 0.0;
    std::int64_t delta_max = 0;
};

struct RunResult {
    std::uint64_t spec_hash = 0;
    std::vector<ReplicateRow> rows; // ordered by (n index, replicate)
    int failures = 0;
    std::map<std::string, double> summary; // "<n>/median_c1" style keys
    std::vector<double> durations_sec;     // one entry per n
};

// Deterministic given the master seed; results are independent of the thread
// count (per-replicate seeding, ordered aggregation).
RunResult run_experiment(const ExperimentSpec& spec, int threads = 1);

// rows.csv + manifest.json (atomic writes).
void write_run_result(const ExperimentSpec& spec, const RunResult& result);
std::string run_rows_csv(const RunResult& result);
std::string run_manifest_json(const ExperimentSpec& spec, const RunResult& result);

enum class CompareMethod { ks, tv_binned, chi2 };

struct CompareReport {
    CompareMethod method = CompareMethod::ks;
    double statistic = 0.0;
    double threshold = 0.0; // critical value at the stated level
    double level = 1e-3;
    bool reject = false;
    std::int64_t n_a = 0, n_b = 0;
};

// Two-sample comparison with documented critical values: KS uses the
// asymptotic two-sample critical value; chi2 pools sqrt(n) equal-probability
// bins of the first sample; tv_binned reports the binned TV against a
// 3-sigma multinomial fluctuation threshold.
CompareReport compare_laws(const std::vector<double>& a, const std::vector<double>& b,
                           CompareMethod method, double level = 1e-3);

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0; // from residuals; degenerate with 2 points
};

// Least squares of log(median) against log(n).
RegressionResult scaling_regression(const std::vector<double>& n_values,
                                    const std::vector<double>& medians);

struct TwoHopResult {
    double fitted_C = 0.0;        // minimal C with zero violations on the grid
    std::int64_t violations = 0;  // against the fitted C (0 by construction)
    double max_p2 = 0.0;
    int i_max = 0, j_max = 0;
    std::vector<double> p2; // row-major grid of p_ij(2), diagonal zero

    double at(int i, int j) const { return p2[(i - 1) * j_max + (j - 1)]; }
};

// Exact two-hop connection probabilities
//   p_ij(2) = p^2 sum_v w_i w_v^2 w_j / ((l + w_i w_v)(l + w_j w_v))
// against the bound C lambda^2 (i^j)^-(1-alpha) (ivj)^-alpha on the grid
// i,j <= i_max. The sum runs over all v by default; include_endpoints=false
// restricts it to genuine intermediates v != i,j.
TwoHopResult two_hop_check(const WeightSequence& w, double p, double lambda,
                           double alpha, int i_max, int j_max,
                           bool include_endpoints = true);

// kappa from 1 - E[exp(-t p^{1/(3-tau)} D*)] = kappa p^{(tau-2)/(3-tau)} t^{tau-2},
// with D* size-biased over the degree sequence (exact summation).
double kappa_estimate(const DegreeSequence& d, double p, double t, double tau);

struct NearCriticalReport {
    double p_n = 0.0;
    bool window_ok = true;
    double median_c1_over_scale = 0.0; // |C1| / (n^alpha p_n)
    double theta1 = 0.0;               // target in the subcritical regime
    double edges_over_size = 0.0;      // supercritical: E(C1)/|C1| median
    double kappa_t1 = 0.0, kappa_t2 = 0.0;
};

enum class NearCriticalRegime { barely_subcritical, barely_supercritical };

// Barely sub/supercritical summaries for the tau in (2,3) configuration
// model: p_n = p_c/log n below the window, p_n = p_c log n above.
NearCriticalReport near_critical_report(double tau, std::int64_t n, double cF,
                                        double lambda, NearCriticalRegime regime,
                                        int replicates, std::uint64_t seed);

} // namespace critlab
