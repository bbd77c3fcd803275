// ptree.hpp -- p-trees (plain and ordered), the birthday construction, the
// tilted law, and the connected-graph sampler that adds a Poisson number of
// permitted surplus edges to a tilted tree.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "critlab/graph.hpp"
#include "critlab/rng.hpp"

namespace critlab {

struct PTree {
    int m = 0;
    Vertex root = 0;
    std::vector<Vertex> parent;                   // -1 at the root
    std::vector<std::vector<Vertex>> child_order; // left-to-right children

    std::int64_t children(Vertex v) const {
        return static_cast<std::int64_t>(child_order[v].size());
    }
};

// P(t) = prod_v p_v^{#children(t,v)} over rooted trees on [m].
double ptree_prob(const PTree& t, const std::vector<double>& p);

enum class PTreeMode { birthday, sequential };

// Draw a p-tree. birthday follows the repeat-time construction verbatim
// (tracking the repeat values); sequential records first-entrance edges of
// the same iid stream without the bookkeeping. Identical law.
PTree ptree_direct(const std::vector<double>& p, Rng& rng,
                   PTreeMode mode = PTreeMode::birthday);

// Depth-first order, permitted masses A_(m)(v), Lambda_(m)(t) and the tilt
// L(t) for an ordered tree. Permitted endpoints of v are the children of
// proper ancestors of v lying strictly to the right of the root-to-v path.
struct TiltState {
    PTree tree;
    std::vector<Vertex> depth_first_order;
    std::vector<double> permitted_mass; // A_(m)(v) per vertex
    double Lambda = 0.0;                // a sum_v p_v A_(m)(v)
    double tilt_value = 1.0;            // L(t) >= 1
    std::vector<std::pair<Vertex, Vertex>> surplus_endpoints; // filled by pcon
};

TiltState compute_tilt(PTree tree, const std::vector<double>& p, double a);

// Enumerate every plane (ordered) rooted tree on [m]; the callback may copy
// the tree but must not retain the reference. Intended for m <= 8.
void enumerate_plane_trees(int m, const std::function<void(const PTree&)>& visit);

struct TiltedSampler {
    enum Kind { enumerate_exact, importance } kind = enumerate_exact;
    int proposals = 64; // importance mode: M proposals, resample one by weight
};

struct TiltedDraw {
    TiltState state;
    double weight = 1.0; // L(t) of the returned tree (importance mode)
    double ess = 0.0;    // effective sample size of the proposal batch
    bool exact = true;
};

// Draw from the tilted ordered law P*_ord proportional to P_ord * L. The
// enumerate sampler is exact and restricted to m <= 8; importance sampling
// draws M ordered p-trees and resamples one proportionally to L.
TiltedDraw ptree_tilted(const std::vector<double>& p, double a, Rng& rng,
                        const TiltedSampler& sampler);

// Connected graph with law P_con(.; p, a, [m]): tilted tree, N* ~
// Poisson(Lambda), first endpoints proportional to p_v A(v), second endpoints
// by permitted-mass within the ancestor path, duplicate surplus edges removed.
SimpleGraph pcon_graph(const std::vector<double>& p, double a, Rng& rng,
                       const TiltedSampler& sampler, TiltState* state_out = nullptr);

} // namespace critlab
