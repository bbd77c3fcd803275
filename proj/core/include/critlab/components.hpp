// components.hpp -- component decomposition and the component statistics used
// throughout: sizes, surplus, diameters, weighted susceptibilities, the
// lower-mass statistic, and the U^0 ordering with its metric.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "critlab/degrees.hpp"
#include "critlab/graph.hpp"

namespace critlab {

struct ComponentStats {
    std::int64_t size = 0;
    std::int64_t edges = 0;
    std::int64_t surplus = 0; // edges - size + 1 for connected components
    std::int64_t diameter = -1;
    bool diameter_exact = true;
    double weight = 0.0;
    std::int64_t open_half_edges = 0; // filled by percolation callers
    Vertex min_vertex = 0;
};

struct DecomposeOptions {
    bool isolated_zero = false;     // report isolated vertices with size 0
    bool with_diameter = true;
    std::int64_t exact_diameter_guard = 100000; // all-sources BFS cap
};

// Exact decomposition from an explicit edge list (loops allowed, counted as
// edges but not as adjacency). Sorted by size descending, ties broken by the
// minimum vertex id.
std::vector<ComponentStats> decompose_edges(
    std::int64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
    const WeightSequence* w, const DecomposeOptions& opts);

template <class Graph>
std::vector<ComponentStats> decompose(const Graph& g, const WeightSequence* w = nullptr,
                                      const DecomposeOptions& opts = {}) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()));
    g.for_each_edge([&](Vertex u, Vertex v) { edges.emplace_back(u, v); });
    return decompose_edges(g.n, edges, w, opts);
}

// Exact diameter of a connected graph (throws on disconnected input).
// All-sources BFS up to the guard; trees use the double sweep, which is exact.
std::int64_t diameter(const SimpleGraph& g,
                      std::int64_t exact_guard = 100000);

struct SusceptibilityReport {
    double s2_star = 0.0;  // n^-1 sum W_(i)^2
    double s3_star = 0.0;  // n^-1 sum W_(i)^3
    double spr_star = 0.0; // n^-1 sum W_(i) |C_(i)|
    double Dn_star = 0.0;  // n^-1 sum_{i,j same comp} w_i w_j d(i,j)
    std::int64_t delta_max = 0;
};

// Weight-based and distance-based susceptibility functions. with_distance
// toggles the O(sum |C| |E_C|) weighted-BFS pass for Dn_star.
SusceptibilityReport susceptibilities(const SimpleGraph& g, const WeightSequence& w,
                                      bool with_distance = true);
SusceptibilityReport susceptibilities(const MultiGraph& g, const WeightSequence& w,
                                      bool with_distance = true);

// Lower-mass statistic of the rank-i component (0-based rank by size):
// inf over v in C_(i) of n^-rho sum of weights within graph distance
// ceil(delta n^eta) of v.
double lower_mass(const SimpleGraph& g, const WeightSequence& w, int rank,
                  double delta, const ScalingConstants& scal);
double lower_mass(const MultiGraph& g, const WeightSequence& w, int rank,
                  double delta, const ScalingConstants& scal);

// (size, surplus) vectors in the U0 ordering: x non-increasing, ties broken by
// y non-increasing, y = 0 whenever x = 0.
struct UVector {
    std::vector<std::pair<double, std::int64_t>> pairs;
};

UVector order_u0(std::vector<std::pair<double, std::int64_t>> pairs);

// d_U = (sum (x1i-x2i)^2)^(1/2) + sum |x1i y1i - x2i y2i|; dist_l2 is the
// first summand alone. Shorter vectors are padded with zeros.
double dist_u(const UVector& a, const UVector& b);
double dist_l2(const std::vector<double>& x1, const std::vector<double>& x2);

// CSV: rank, size, edges, surplus, diameter, weight.
void write_components_csv(const std::vector<ComponentStats>& comps, std::ostream& out);

} // namespace critlab
