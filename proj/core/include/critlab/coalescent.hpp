// coalescent.hpp -- event-driven multiplicative coalescent and its augmented
// version, the dynamic half-edge construction, the kept-alive modification,
// and the lambda <-> time map of the critical window.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "critlab/components.hpp"
#include "critlab/degrees.hpp"
#include "critlab/graph.hpp"
#include "critlab/rng.hpp"

namespace critlab {

enum class CoalEventType { merge, surplus, pair };

struct CoalEvent {
    double time = 0.0;
    CoalEventType type = CoalEventType::merge;
    std::int64_t i = -1, j = -1; // particle / component labels
    bool bad = false;            // modified process: edge absent from the thinned dynamic
};

// Exact Gillespie simulation of the multiplicative coalescent: particles i, j
// merge at rate K1 x_i x_j; the augmented version also increments y_i at rate
// K2 x_i^2.
struct CoalTrajectory {
    std::vector<CoalEvent> events;
    std::vector<double> final_masses;       // ordered descending
    std::vector<std::int64_t> final_attrs;  // matching order (AMC only)
    double t_end = 0.0;

    UVector final_uvector() const;
};

CoalTrajectory simulate_mc(const std::vector<double>& x0, double K1, double T, Rng& rng);

CoalTrajectory simulate_amc(const std::vector<double>& x0,
                            const std::vector<std::int64_t>& y0, double K1, double K2,
                            double T, Rng& rng);

// Snapshot of the dynamic construction: the graph so far, open half-edges and
// per-component open counts (the coalescent masses).
struct DynState {
    double time = 0.0;
    MultiGraph graph;                      // matching so far, -1 = open
    std::vector<std::int64_t> open;        // open half-edge ids
    std::vector<Vertex> component;         // vertex -> component root
    std::vector<std::int64_t> open_count;  // per root: O_i
    std::vector<std::int64_t> surplus;     // per root: surplus edges so far

    std::int64_t s1() const { return static_cast<std::int64_t>(open.size()); }
};

struct DynTrajectory {
    std::vector<CoalEvent> events;          // merge/surplus events with roots
    std::vector<double> times;              // event times
    std::vector<std::int64_t> s1_series;    // open half-edges after each event
    DynState state;                         // state at the stopping time
};

// Unit-rate exponential clocks on open half-edges; each event pairs two
// uniformly chosen open half-edges. Run to time T (infinity: run to
// exhaustion); the terminal graph has the CM_n(d) law.
DynTrajectory dynamic_construction(const DegreeSequence& d, double T, Rng& rng);

// Kept-alive modification started from a dynamic-construction state: a
// Poisson process of constant rate s1 selects pairs from the frozen open set;
// selected half-edges stay alive, so the open-count vector evolves as an
// exact multiplicative coalescent with merge rate 2 O_i O_j / (s1 - 1).
// A thinned copy of the dynamic construction shares the event stream, so the
// inclusion G(t) subset G-bar(t) holds deterministically; edges absent from
// the thinned copy are logged as bad.
struct ModifiedResult {
    std::vector<CoalEvent> events;
    std::int64_t bad_edges = 0;
    std::vector<double> final_masses;      // kept-alive open counts, ordered
    std::vector<std::int64_t> final_surplus;
    double t_end = 0.0;

    UVector final_uvector() const;
};

ModifiedResult modified_process(const DynState& start, double T, Rng& rng);

// t_n(lambda) = (1/2) log(nu_n / (nu_n - 1)) + lambda / (2 (nu_n - 1) c_n).
double time_map(double nu_n, double c_n, double lambda);

// Empirical total-variation distance between the ordered mass vector of the
// multiplicative coalescent at time t and the component masses of the
// Norros-Reittu graph NR(x, t) (edges at rate x_i x_j).
struct CouplingCheck {
    double tv = 0.0;
    std::int64_t distinct_outcomes = 0;
};

CouplingCheck nr_mc_coupling_check(const std::vector<double>& x, double t, Rng& rng,
                                   int n_samples);

// CSV: time, type in {merge, surplus, pair}, i, j.
void write_events_csv(const std::vector<CoalEvent>& events, std::ostream& out);

} // namespace critlab
