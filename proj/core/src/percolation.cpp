#include "critlab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

namespace critlab {

CriticalP critical_p(const PercolationSpec& spec, double nu_n, const ScalingConstants& scal) {
    CriticalP res;
    if (spec.explicit_p) {
        res.p = *spec.explicit_p;
        if (res.p < 0.0 || res.p > 1.0)
            throw std::invalid_argument("critical_p: explicit p outside [0,1]");
        return res;
    }
    const double n = static_cast<double>(scal.n);
    double p = 0.0;
    switch (spec.regime) {
        case PercRegime::tau_gt4:
            p = (1.0 + spec.lambda * std::pow(n, -1.0 / 3.0)) / nu_n;
            break;
        case PercRegime::tau_34:
            p = (1.0 + spec.lambda / scal.c_n) / nu_n;
            break;
        case PercRegime::tau_23_CM:
            if (spec.lambda <= 0.0)
                throw std::invalid_argument("critical_p: lambda must be > 0 for tau in (2,3)");
            p = spec.lambda / nu_n;
            break;
        case PercRegime::tau_23_single:
            if (spec.lambda <= 0.0)
                throw std::invalid_argument("critical_p: lambda must be > 0 for tau in (2,3)");
            p = spec.lambda * std::pow(n, -(3.0 - scal.tau) / 2.0);
            break;
    }
    if (p < 0.0) {
        res.p = 0.0;
        res.clamped = true;
    } else if (p > 1.0) {
        res.p = 1.0;
        res.clamped = true;
    } else {
        res.p = p;
    }
    return res;
}

PercolatedGraph bond_percolate(const MultiGraph& g, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bond_percolate: p outside [0,1]");
    PercolatedGraph out;
    out.p = p;
    MultiGraph kept;
    kept.n = g.n;
    kept.half_edge_owner = g.half_edge_owner;
    kept.matching.assign(g.half_edges(), -1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.retained_edge.reserve(g.edge_count());
    for (std::int64_t h = 0; h < g.half_edges(); ++h) {
        const std::int64_t q = g.matching[h];
        if (h < q) {
            const bool keep = unif(rng) <= p;
            out.retained_edge.push_back(keep);
            if (keep) {
                kept.matching[h] = q;
                kept.matching[q] = h;
            }
        }
    }
    out.graph = std::move(kept);
    return out;
}

PercolatedGraph bond_percolate(const SimpleGraph& g, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bond_percolate: p outside [0,1]");
    PercolatedGraph out;
    out.p = p;
    SimpleGraph kept;
    kept.n = g.n;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.retained_edge.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        const bool keep = unif(rng) <= p;
        out.retained_edge.push_back(keep);
        if (keep) kept.edges.push_back(e);
    }
    out.graph = std::move(kept);
    return out;
}

PercolatedGraph janson_percolate(const DegreeSequence& d, double p, Rng& rng,
                                 JansonCleanup cleanup) {
    if (p <= 0.0 || p > 1.0)
        throw std::invalid_argument("janson_percolate: p must lie in (0,1]");
    const double sq = std::sqrt(p);
    const std::int64_t n = d.n();

    PercolatedGraph out;
    out.p = p;
    out.exploded_degrees.resize(n);
    std::int64_t n_plus = 0;
    std::vector<std::int64_t> dt(n);
    for (std::int64_t i = 0; i < n; ++i) {
        dt[i] = std::binomial_distribution<std::int64_t>(d.degrees[i], sq)(rng);
        out.exploded_degrees[i] = dt[i];
        n_plus += d.degrees[i] - dt[i];
    }
    out.n_plus = n_plus;

    // exploded sequence: d~ on [n] plus n_+ red degree-one vertices
    std::vector<std::int64_t> full(dt);
    full.insert(full.end(), n_plus, 1);
    DegreeSequence exploded;
    exploded.degrees = std::move(full);
    exploded.recompute_total(); // total = ell_n, even by construction
    MultiGraph big = config_model(exploded, rng);

    std::vector<char> deleted(exploded.n(), 0);
    if (cleanup == JansonCleanup::delete_red) {
        for (std::int64_t v = n; v < exploded.n(); ++v) deleted[v] = 1;
    } else {
        // uniformly chosen degree-one vertices, law-equivalent to deleting reds
        std::vector<Vertex> deg1;
        for (std::int64_t v = 0; v < exploded.n(); ++v)
            if (exploded.degrees[v] == 1) deg1.push_back(static_cast<Vertex>(v));
        for (std::int64_t k = 0; k < n_plus; ++k) {
            const std::int64_t j =
                std::uniform_int_distribution<std::int64_t>(k, deg1.size() - 1)(rng);
            std::swap(deg1[k], deg1[j]);
            deleted[deg1[k]] = 1;
        }
    }

    // compact the surviving vertices; deleting a degree-one vertex leaves its
    // partner half-edge open
    std::vector<Vertex> remap(exploded.n(), -1);
    Vertex next = 0;
    for (std::int64_t v = 0; v < exploded.n(); ++v)
        if (!deleted[v]) remap[v] = next++;

    MultiGraph kept;
    kept.n = next;
    std::vector<std::int64_t> he_remap(big.half_edges(), -1);
    for (std::int64_t h = 0; h < big.half_edges(); ++h) {
        if (!deleted[big.half_edge_owner[h]]) {
            he_remap[h] = kept.half_edge_owner.size();
            kept.half_edge_owner.push_back(remap[big.half_edge_owner[h]]);
        }
    }
    kept.matching.assign(kept.half_edge_owner.size(), -1);
    for (std::int64_t h = 0; h < big.half_edges(); ++h) {
        const std::int64_t q = big.matching[h];
        if (h < q && he_remap[h] >= 0 && he_remap[q] >= 0) {
            kept.matching[he_remap[h]] = he_remap[q];
            kept.matching[he_remap[q]] = he_remap[h];
        }
    }
    out.graph = std::move(kept);
    return out;
}

PercolatedGraph fountoulakis_percolate(const DegreeSequence& d, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("fountoulakis_percolate: p outside [0,1]");
    const std::int64_t ell = d.total;
    PercolatedGraph out;
    out.p = p;
    MultiGraph g;
    g.n = d.n();
    g.half_edge_owner = half_edge_owners(d);
    g.matching.assign(ell, -1);

    const std::int64_t X = std::binomial_distribution<std::int64_t>(ell / 2, p)(rng);
    // Floyd's sampling of 2X distinct half-edges, then shuffle-pair them.
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(2 * X) * 2);
    std::vector<std::int64_t> picks;
    picks.reserve(2 * X);
    for (std::int64_t t = ell - 2 * X; t < ell; ++t) {
        const std::int64_t r = std::uniform_int_distribution<std::int64_t>(0, t)(rng);
        if (chosen.insert(r).second) {
            picks.push_back(r);
        } else {
            chosen.insert(t);
            picks.push_back(t);
        }
    }
    for (std::int64_t i = static_cast<std::int64_t>(picks.size()) - 1; i > 0; --i) {
        const std::int64_t j = std::uniform_int_distribution<std::int64_t>(0, i)(rng);
        std::swap(picks[i], picks[j]);
    }
    for (std::size_t i = 0; i + 1 < picks.size(); i += 2) {
        g.matching[picks[i]] = picks[i + 1];
        g.matching[picks[i + 1]] = picks[i];
    }
    out.graph = std::move(g);
    return out;
}

namespace {

PercolatedGraph sandwich_from_flags(const DegreeSequence& d, double p,
                                    std::vector<char> keep, Rng& rng) {
    PercolatedGraph out;
    out.p = p;
    MultiGraph g;
    g.n = d.n();
    g.half_edge_owner = half_edge_owners(d);

    std::vector<std::int64_t> retained;
    for (std::int64_t h = 0; h < d.total; ++h)
        if (keep[h]) retained.push_back(h);
    if (retained.size() % 2 != 0) {
        // dummy half-edge attached to vertex 1 restores parity
        g.half_edge_owner.push_back(0);
        retained.push_back(d.total);
    }
    g.matching.assign(g.half_edges(), -1);
    for (std::int64_t i = static_cast<std::int64_t>(retained.size()) - 1; i > 0; --i) {
        const std::int64_t j = std::uniform_int_distribution<std::int64_t>(0, i)(rng);
        std::swap(retained[i], retained[j]);
    }
    for (std::size_t i = 0; i + 1 < retained.size(); i += 2) {
        g.matching[retained[i]] = retained[i + 1];
        g.matching[retained[i + 1]] = retained[i];
    }
    out.retained_half_edges = std::move(retained);
    std::sort(out.retained_half_edges.begin(), out.retained_half_edges.end());
    out.graph = std::move(g);
    return out;
}

} // namespace

PercolatedGraph sandwich_graph(const DegreeSequence& d, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sandwich_graph: p outside [0,1]");
    std::vector<char> keep(d.total);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::int64_t h = 0; h < d.total; ++h) keep[h] = unif(rng) <= p;
    return sandwich_from_flags(d, p, std::move(keep), rng);
}

PercolatedGraph sandwich_graph_coupled(const DegreeSequence& d, double p,
                                       const std::vector<double>& uniforms, Rng& rng) {
    if (static_cast<std::int64_t>(uniforms.size()) != d.total)
        throw std::invalid_argument("sandwich_graph_coupled: need one uniform per half-edge");
    std::vector<char> keep(d.total);
    for (std::int64_t h = 0; h < d.total; ++h) keep[h] = uniforms[h] <= p;
    return sandwich_from_flags(d, p, std::move(keep), rng);
}

MultiGraph CoupledFamily::graph_at(std::size_t idx) const {
    MultiGraph g;
    g.n = n;
    g.half_edge_owner = owner;
    g.matching.assign(owner.size(), -1);
    const std::int64_t k = edge_counts.at(idx);
    for (std::int64_t e = 0; e < k; ++e) {
        const std::int64_t a = pairing[2 * e], b = pairing[2 * e + 1];
        g.matching[a] = b;
        g.matching[b] = a;
    }
    return g;
}

CoupledFamily harris_family(const DegreeSequence& d, const std::vector<double>& lambdas,
                            PercRegime regime, const ScalingConstants& scal, Rng& rng) {
    if (!std::is_sorted(lambdas.begin(), lambdas.end()))
        throw std::invalid_argument("harris_family: lambda grid must be sorted");
    CoupledFamily fam;
    fam.n = d.n();
    fam.lambdas = lambdas;
    fam.owner = half_edge_owners(d);
    const std::int64_t slots = d.total / 2;

    const CriticalityReport rep = criticality(d, scal, 1);
    for (double lam : lambdas) {
        PercolationSpec spec;
        spec.regime = regime;
        spec.lambda = lam;
        fam.ps.push_back(critical_p(spec, rep.nu_n, scal).p);
    }

    // edge-slot uniforms determine how many pairings are revealed at each p
    std::vector<double> U(slots);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& u : U) u = unif(rng);
    std::sort(U.begin(), U.end());
    for (double p : fam.ps) {
        const auto it = std::upper_bound(U.begin(), U.end(), p);
        fam.edge_counts.push_back(it - U.begin());
    }

    // arrival-ordered uniform pairing: a uniform permutation read two at a time
    std::vector<std::int64_t> perm(d.total);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::int64_t i = d.total - 1; i > 0; --i) {
        const std::int64_t j = std::uniform_int_distribution<std::int64_t>(0, i)(rng);
        std::swap(perm[i], perm[j]);
    }
    fam.pairing = std::move(perm);
    return fam;
}

std::string percolation_json_sidecar(double p, const std::string& regime, double lambda,
                                     std::int64_t n_plus) {
    nlohmann::json j;
    j["p"] = p;
    j["regime"] = regime;
    j["lambda"] = lambda;
    j["n_plus"] = n_plus;
    return j.dump();
}

} // namespace critlab
