// stats.hpp -- estimator plumbing: quantiles, KS statistics, chi-square
// goodness of fit with exact tail probabilities, and binned TV distances.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace critlab {

double quantile(std::vector<double> values, double q); // linear interpolation
double median(std::vector<double> values);

struct MeanSE {
    double mean = 0.0;
    double se = 0.0; // standard error of the mean
    std::int64_t n = 0;
};
MeanSE mean_se(const std::vector<double>& values);

// two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|
double ks_statistic(std::vector<double> a, std::vector<double> b);
// asymptotic critical value c(level) sqrt((na+nb)/(na nb))
double ks_critical(double level, std::int64_t na, std::int64_t nb);

// regularized upper incomplete gamma Q(s, x); chi2_sf(x, k) = Q(k/2, x/2)
double gamma_q(double s, double x);
double chi2_sf(double x, int dof);
// upper quantile: smallest x with chi2_sf(x, dof) <= level
double chi2_critical(double level, int dof);

struct Chi2Result {
    double stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool reject(double level) const { return p_value < level; }
};

// goodness of fit of counts against a pmf (cells with zero expectation are
// required to be empty and are skipped)
Chi2Result chi2_gof(const std::vector<std::int64_t>& counts,
                    const std::vector<double>& probs);

// empirical TV distance between two labelled count tables
double tv_counts(const std::map<std::string, std::int64_t>& a, std::int64_t na,
                 const std::map<std::string, std::int64_t>& b, std::int64_t nb);

// TV between two continuous samples over equal-width bins spanning both
double tv_binned(const std::vector<double>& a, const std::vector<double>& b, int bins);

// label helper for small ordered integer vectors (component-size laws)
std::string size_vector_key(std::vector<std::int64_t> sizes);

} // namespace critlab
