// graph.hpp -- configuration multigraphs, uniform simple graphs, erased
// configuration models and rank-one inhomogeneous random graphs.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "critlab/degrees.hpp"
#include "critlab/rng.hpp"

namespace critlab {

using Vertex = std::int32_t;

// Half-edge level multigraph. matching is an involution without fixed points;
// loops and multi-edges are representable. Edge (u,v) appears once per pair
// h < matching[h].
struct MultiGraph {
    std::int64_t n = 0;
    std::vector<Vertex> half_edge_owner;  // half-edge id -> vertex
    std::vector<std::int64_t> matching;   // half-edge id -> partner id

    std::int64_t half_edges() const { return static_cast<std::int64_t>(half_edge_owner.size()); }

    // matched pairs only: percolated graphs leave open half-edges at -1
    std::int64_t edge_count() const {
        std::int64_t count = 0;
        for (std::int64_t h = 0; h < half_edges(); ++h)
            if (h < matching[h]) ++count;
        return count;
    }

    template <class F>
    void for_each_edge(F&& f) const {
        for (std::int64_t h = 0; h < half_edges(); ++h) {
            const std::int64_t p = matching[h];
            if (h < p) f(half_edge_owner[h], half_edge_owner[p]);
        }
    }

    // per-vertex (neighbor, multiplicity) lists, derived on demand
    std::vector<std::vector<std::pair<Vertex, std::int32_t>>> adjacency() const;
    std::vector<std::int64_t> degrees() const;
};

// Loop-free graph with distinct unordered edges (u < v).
struct SimpleGraph {
    std::int64_t n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }

    template <class F>
    void for_each_edge(F&& f) const {
        for (const auto& [u, v] : edges) f(u, v);
    }

    std::vector<std::vector<Vertex>> adjacency() const;
    std::vector<std::int64_t> degrees() const;
};

// Half-edge ids grouped by vertex: owner array plus the first-id offsets.
std::vector<Vertex> half_edge_owners(const DegreeSequence& d);

// Uniform perfect matching of the half-edges (Fisher-Yates paired
// consecutively). Requires even total degree.
MultiGraph config_model(const DegreeSequence& d, Rng& rng);

// Rejection sampling of CM_n(d) conditioned on simplicity.
struct UniformSimpleResult {
    std::optional<SimpleGraph> graph;
    int attempts = 0; // number of configuration models generated
};
UniformSimpleResult uniform_simple(const DegreeSequence& d, Rng& rng, int max_tries);

bool is_simple(const MultiGraph& g);

// Collapse multi-edges and delete loops of a fresh configuration model.
struct ErasedResult {
    SimpleGraph graph;
    std::int64_t erased_edges = 0; // multigraph edges minus simple edges
};
ErasedResult erased_config_model(const DegreeSequence& d, Rng& rng);
ErasedResult erase(const MultiGraph& g);

enum class Kernel { GRG, ChungLu, NorrosReittu, NRq };

// Edge probability of the kernel for weights (w_i, w_j) with total ell
// (NRq uses the rate q and ignores ell).
double kernel_prob(Kernel k, double wi, double wj, double ell, double q);

// Independent edges with the kernel's p_ij. `thin` multiplies every edge
// probability (independent bond percolation applied on the fly). Expected
// O(n + edges) via skip sampling over weight-sorted vertex pairs.
SimpleGraph inhomogeneous_graph(const WeightSequence& w, Kernel kernel, Rng& rng,
                                double q = 0.0, double thin = 1.0);

// Serialization: "u v" per line (1-based), multigraphs repeat lines, loops as
// "u u"; JSON sidecar carries n and the degree sequence.
void write_edge_list(const MultiGraph& g, std::ostream& out);
void write_edge_list(const SimpleGraph& g, std::ostream& out);
SimpleGraph read_edge_list(std::istream& in);
std::string graph_json_sidecar(std::int64_t n, const std::vector<std::int64_t>& degrees,
                               const std::string& model);

} // namespace critlab
