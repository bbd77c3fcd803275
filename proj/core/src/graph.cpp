#include "critlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace critlab {

std::vector<std::vector<std::pair<Vertex, std::int32_t>>> MultiGraph::adjacency() const {
    std::vector<std::vector<std::pair<Vertex, std::int32_t>>> adj(n);
    for_each_edge([&](Vertex u, Vertex v) {
        auto add = [&](Vertex a, Vertex b) {
            for (auto& [nb, mult] : adj[a]) {
                if (nb == b) {
                    ++mult;
                    return;
                }
            }
            adj[a].emplace_back(b, 1);
        };
        add(u, v);
        if (u != v) add(v, u);
    });
    return adj;
}

std::vector<std::int64_t> MultiGraph::degrees() const {
    std::vector<std::int64_t> d(n, 0);
    for (Vertex v : half_edge_owner) ++d[v];
    return d;
}

std::vector<std::vector<Vertex>> SimpleGraph::adjacency() const {
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<std::int64_t> SimpleGraph::degrees() const {
    std::vector<std::int64_t> d(n, 0);
    for (const auto& [u, v] : edges) {
        ++d[u];
        ++d[v];
    }
    return d;
}

std::vector<Vertex> half_edge_owners(const DegreeSequence& d) {
    std::vector<Vertex> owner;
    owner.reserve(d.total);
    for (std::int64_t v = 0; v < d.n(); ++v)
        for (std::int64_t k = 0; k < d.degrees[v]; ++k)
            owner.push_back(static_cast<Vertex>(v));
    return owner;
}

MultiGraph config_model(const DegreeSequence& d, Rng& rng) {
    if (d.total % 2 != 0)
        throw std::invalid_argument("config_model: total degree must be even");
    MultiGraph g;
    g.n = d.n();
    g.half_edge_owner = half_edge_owners(d);
    const std::int64_t m = g.half_edges();
    std::vector<std::int64_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::int64_t i = m - 1; i > 0; --i) {
        const std::int64_t j = std::uniform_int_distribution<std::int64_t>(0, i)(rng);
        std::swap(perm[i], perm[j]);
    }
    g.matching.assign(m, -1);
    for (std::int64_t i = 0; i + 1 < m; i += 2) {
        g.matching[perm[i]] = perm[i + 1];
        g.matching[perm[i + 1]] = perm[i];
    }
    return g;
}

bool is_simple(const MultiGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> seen;
    seen.reserve(g.edge_count());
    bool loop = false;
    g.for_each_edge([&](Vertex u, Vertex v) {
        if (u == v) loop = true;
        seen.emplace_back(std::min(u, v), std::max(u, v));
    });
    if (loop) return false;
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

UniformSimpleResult uniform_simple(const DegreeSequence& d, Rng& rng, int max_tries) {
    if (max_tries < 1) throw std::invalid_argument("uniform_simple: max_tries must be >= 1");
    UniformSimpleResult res;
    for (res.attempts = 1; res.attempts <= max_tries; ++res.attempts) {
        MultiGraph g = config_model(d, rng);
        if (is_simple(g)) {
            SimpleGraph s;
            s.n = g.n;
            g.for_each_edge([&](Vertex u, Vertex v) {
                s.edges.emplace_back(std::min(u, v), std::max(u, v));
            });
            std::sort(s.edges.begin(), s.edges.end());
            res.graph = std::move(s);
            return res;
        }
    }
    res.attempts = max_tries;
    return res; // graph left empty: rejection budget exhausted
}

ErasedResult erase(const MultiGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(g.edge_count());
    g.for_each_edge([&](Vertex u, Vertex v) {
        if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
    });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    ErasedResult res;
    res.graph.n = g.n;
    res.graph.edges = std::move(edges);
    res.erased_edges = g.edge_count() - res.graph.edge_count();
    return res;
}

ErasedResult erased_config_model(const DegreeSequence& d, Rng& rng) {
    return erase(config_model(d, rng));
}

double kernel_prob(Kernel k, double wi, double wj, double ell, double q) {
    const double x = wi * wj;
    switch (k) {
        case Kernel::GRG:
            return x / (ell + x);
        case Kernel::ChungLu:
            return std::min(x / ell, 1.0);
        case Kernel::NorrosReittu:
            return 1.0 - std::exp(-x / ell);
        case Kernel::NRq:
            return 1.0 - std::exp(-q * x);
    }
    return 0.0;
}

SimpleGraph inhomogeneous_graph(const WeightSequence& w, Kernel kernel, Rng& rng,
                                double q, double thin) {
    if (kernel == Kernel::NRq && q < 0.0)
        throw std::invalid_argument("inhomogeneous_graph: q must be >= 0");
    const std::int64_t n = w.n();
    SimpleGraph g;
    g.n = n;
    if (n < 2) return g;
    const double ell = w.total;

    // Sort vertices by weight (descending) so p_ij is non-increasing in j for
    // every fixed i; skip sampling then touches each row O(1 + edges) times.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return w.weights[a] > w.weights[b];
    });
    std::vector<double> ws(n);
    for (std::int64_t i = 0; i < n; ++i) ws[i] = w.weights[order[i]];

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::int64_t i = 0; i + 1 < n; ++i) {
        if (ws[i] <= 0.0) break; // all remaining probabilities vanish
        std::int64_t j = i + 1;
        while (j < n) {
            double bound = thin * kernel_prob(kernel, ws[i], ws[j], ell, q);
            if (bound <= 0.0) break;
            if (bound < 1.0) {
                double u = unif(rng);
                while (u <= 0.0) u = unif(rng);
                const double skip = std::floor(std::log(u) / std::log1p(-bound));
                if (skip >= static_cast<double>(n - j)) break;
                j += static_cast<std::int64_t>(skip);
            }
            const double pj = thin * kernel_prob(kernel, ws[i], ws[j], ell, q);
            if (unif(rng) * bound < pj)
                g.edges.emplace_back(std::min(order[i], order[j]),
                                     std::max(order[i], order[j]));
            ++j;
        }
    }
    return g;
}

void write_edge_list(const MultiGraph& g, std::ostream& out) {
    g.for_each_edge([&](Vertex u, Vertex v) { out << (u + 1) << ' ' << (v + 1) << '\n'; });
}

void write_edge_list(const SimpleGraph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges) out << (u + 1) << ' ' << (v + 1) << '\n';
}

SimpleGraph read_edge_list(std::istream& in) {
    SimpleGraph g;
    std::int64_t u, v, maxv = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    while (in >> u >> v) {
        if (u < 1 || v < 1) throw std::runtime_error("read_edge_list: vertex ids are 1-based");
        maxv = std::max({maxv, u, v});
        if (u != v)
            edges.emplace_back(static_cast<Vertex>(std::min(u, v) - 1),
                               static_cast<Vertex>(std::max(u, v) - 1));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.n = maxv;
    g.edges = std::move(edges);
    return g;
}

std::string graph_json_sidecar(std::int64_t n, const std::vector<std::int64_t>& degrees,
                               const std::string& model) {
    nlohmann::json j;
    j["n"] = n;
    j["degrees"] = degrees;
    j["model"] = model;
    return j.dump();
}

} // namespace critlab
