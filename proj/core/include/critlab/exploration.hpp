// exploration.hpp -- the two exploration walks over configuration models:
// per-vertex depth-first (one vertex discovered per stage, cycle half-edges
// batched) and per-edge breadth-first (one pairing per stage). Component
// boundaries are the hitting times of -2k.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "critlab/degrees.hpp"
#include "critlab/graph.hpp"

namespace critlab {

enum class WalkMode { dfs_vertex, unit_edge };

enum class WalkEvent : std::uint8_t { root, new_vertex, surplus, loop };

struct ExplorationWalk {
    WalkMode mode = WalkMode::dfs_vertex;
    std::vector<std::int64_t> values;         // S(0..T), values[0] == 0
    std::vector<std::int64_t> tau;            // tau_k = first stage with S == -2k
    std::vector<WalkEvent> events;            // one per stage 1..T
    std::vector<std::int64_t> surplus_times;  // stages with a surplus pairing
    std::vector<std::int64_t> loop_times;     // unit mode: self-loop stages
    std::vector<std::int32_t> cycle_counts;   // dfs mode: c_(j) per stage
    std::vector<Vertex> discovered_order;

    std::int64_t stages() const { return static_cast<std::int64_t>(values.size()) - 1; }
    bool complete() const {
        return !values.empty() &&
               values.back() == -2 * static_cast<std::int64_t>(tau.size()) &&
               !tau.empty() && tau.back() == stages();
    }
};

struct ExploreResult {
    ExplorationWalk walk;
    MultiGraph graph; // byproduct multigraph, distributed as CM_n(d)
};

// Depth-first exploration: stage increments d_(j) - 2 - 2 c_(j), where c_(j)
// counts the cycle half-edge pairs (loops, multi-edges, back-edges) revealed
// when the j-th vertex is discovered. |C_k| = tau_k - tau_{k-1}.
ExploreResult explore_dfs(const DegreeSequence& d, Rng& rng);

// Breadth-first unit-edge exploration: root-selection stages carry the degree
// credit (d - 2) with no pairing; every other stage consumes exactly one edge
// (increment d_(l) J_l - 2). Edges of C_k = tau_k - tau_{k-1} - 1, and the
// J_l = 0 stages are the surplus pairings.
ExploreResult explore_unit(const DegreeSequence& d, Rng& rng);

struct ComponentFromWalk {
    std::int64_t size = 0;    // vertices (both modes)
    std::int64_t edges = 0;   // unit mode: tau gap - 1; dfs mode: size - 1 + surplus
    std::int64_t surplus = 0;
};

// Per-component sizes/edge counts and surplus tallies read off the walk.
// count_loops = false switches the unit-mode accounting to simple-graph
// semantics (self-loops dropped from both edge and surplus tallies).
std::vector<ComponentFromWalk> components_from_walk(const ExplorationWalk& w,
                                                    bool count_loops = true);

struct RescaledPath {
    std::vector<double> times;
    std::vector<double> values;
    double space_scale = 1.0; // a_n
    double time_scale = 1.0;  // b_n
};

// S_bar(t) = S(floor(b_n t)) / a_n on the stage grid t_i = i / b_n.
RescaledPath rescale_walk(const ExplorationWalk& w, const ScalingConstants& scal);

struct SizeBiasedCheck {
    std::vector<std::int64_t> first_vertex_counts; // over `runs` explorations
    std::vector<double> expected_probs;            // d_j / ell_n
    double chi2 = 0.0;
    int dof = 0;
};

// Empirical law of the first discovered vertex over independent depth-first
// runs, against the size-biased pmf d_j / ell_n.
SizeBiasedCheck size_biased_check(const DegreeSequence& d, Rng& rng, int runs);

// CSV: stage, S, event in {root, new, surplus, loop}.
void write_walk_csv(const ExplorationWalk& w, std::ostream& out);

} // namespace critlab
