// percolation.hpp -- bond percolation and its alternative constructions on
// configuration models: direct, Janson explosion, Fountoulakis binomial
// matching, half-edge retention (sandwich), and the Harris-coupled family.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "critlab/degrees.hpp"
#include "critlab/graph.hpp"

namespace critlab {

enum class PercRegime { tau_gt4, tau_34, tau_23_CM, tau_23_single };

struct PercolationSpec {
    PercRegime regime = PercRegime::tau_gt4;
    double lambda = 0.0;              // window location; > 0 required for tau in (2,3)
    std::optional<double> explicit_p; // overrides the window formula
};

struct CriticalP {
    double p = 0.0;
    bool clamped = false; // true when the formula left [0,1]
};

// Window parameterizations:
//   tau_gt4:       p = nu_n^-1 (1 + lambda n^-1/3)
//   tau_34:        p = nu_n^-1 (1 + lambda c_n^-1)
//   tau_23_CM:     p = lambda / nu_n
//   tau_23_single: p = lambda n^-(3-tau)/2
CriticalP critical_p(const PercolationSpec& spec, double nu_n, const ScalingConstants& scal);

enum class JansonCleanup { delete_red, delete_uniform_deg1 };

// Percolated graph plus construction bookkeeping. graph.matching uses -1 for
// open (unpaired) half-edges when the result is half-edge based.
struct PercolatedGraph {
    std::variant<MultiGraph, SimpleGraph> graph;
    double p = 1.0;
    std::vector<char> retained_edge;              // direct mode: per original edge
    std::int64_t n_plus = 0;                      // Janson: red vertex count
    std::vector<std::int64_t> exploded_degrees;   // Janson: d-tilde over [n]
    std::vector<std::int64_t> retained_half_edges; // sandwich mode

    const MultiGraph& multi() const { return std::get<MultiGraph>(graph); }
    const SimpleGraph& simple() const { return std::get<SimpleGraph>(graph); }
};

// Keep each edge independently with probability p.
PercolatedGraph bond_percolate(const MultiGraph& g, double p, Rng& rng);
PercolatedGraph bond_percolate(const SimpleGraph& g, double p, Rng& rng);

// Janson's explosion construction: d~_i ~ Bin(d_i, sqrt(p)) plus n_+ red
// degree-one vertices, a uniform matching, then deletion of n_+ degree-one
// vertices (red ones, or uniformly chosen ones, which is law-equivalent).
// Output lives on [n] for delete_red; on a relabeled vertex set otherwise.
PercolatedGraph janson_percolate(const DegreeSequence& d, double p, Rng& rng,
                                 JansonCleanup cleanup = JansonCleanup::delete_uniform_deg1);

// Fountoulakis' construction: X ~ Bin(ell/2, p) edges built from a uniform
// matching of 2X uniformly chosen half-edges. Exact law of CM_n(d, p).
PercolatedGraph fountoulakis_percolate(const DegreeSequence& d, double p, Rng& rng);

// Retention construction: keep each half-edge with probability p (dummy
// half-edge on vertex 1 restores parity), then a uniform matching among the
// kept ones. Distributed as CM_n(d~) with d~_i ~ Bin(d_i, p).
PercolatedGraph sandwich_graph(const DegreeSequence& d, double p, Rng& rng);
// Deterministic variant with caller-supplied per-half-edge uniforms (nested
// retention coupling across p values).
PercolatedGraph sandwich_graph_coupled(const DegreeSequence& d, double p,
                                       const std::vector<double>& uniforms, Rng& rng);

// Harris-coupled edge-arrival construction: one realization whose marginal at
// every lambda is CM_n(d, p(lambda)), monotone in lambda.
struct CoupledFamily {
    std::int64_t n = 0;
    std::vector<double> lambdas;
    std::vector<double> ps;
    std::vector<std::int64_t> edge_counts; // edges present at each lambda
    std::vector<Vertex> owner;             // half-edge id -> vertex
    std::vector<std::int64_t> pairing;     // arrival-ordered half-edge pairs (2k, 2k+1)

    MultiGraph graph_at(std::size_t idx) const;
};

CoupledFamily harris_family(const DegreeSequence& d, const std::vector<double>& lambdas,
                            PercRegime regime, const ScalingConstants& scal, Rng& rng);

// JSON sidecar {p, regime, lambda, n_plus}.
std::string percolation_json_sidecar(double p, const std::string& regime, double lambda,
                                     std::int64_t n_plus);

} // namespace critlab
