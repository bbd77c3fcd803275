#include "critlab/components.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace critlab {

namespace {

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(std::int64_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Vertex find(Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b); // root = min id
    }
};

// CSR adjacency (loops dropped; multi-edges kept, harmless for BFS).
struct Csr {
    std::vector<std::int64_t> offset;
    std::vector<Vertex> nbr;

    Csr(std::int64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
        offset.assign(n + 1, 0);
        for (const auto& [u, v] : edges) {
            if (u == v) continue;
            ++offset[u + 1];
            ++offset[v + 1];
        }
        for (std::int64_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
        nbr.resize(offset[n]);
        std::vector<std::int64_t> cur(offset.begin(), offset.end() - 1);
        for (const auto& [u, v] : edges) {
            if (u == v) continue;
            nbr[cur[u]++] = v;
            nbr[cur[v]++] = u;
        }
    }
};

// BFS from src over the CSR view; dist uses -1 as "unvisited"; returns the
// farthest vertex and its distance. `scratch` must be a reusable dist array.
std::pair<Vertex, std::int64_t> bfs_far(const Csr& adj, Vertex src,
                                        std::vector<std::int64_t>& dist,
                                        std::vector<Vertex>& touched,
                                        std::vector<Vertex>& frontier) {
    touched.clear();
    frontier.clear();
    frontier.push_back(src);
    dist[src] = 0;
    touched.push_back(src);
    Vertex far = src;
    std::int64_t far_d = 0;
    for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
        const Vertex x = frontier[qi];
        for (std::int64_t k = adj.offset[x]; k < adj.offset[x + 1]; ++k) {
            const Vertex y = adj.nbr[k];
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                touched.push_back(y);
                frontier.push_back(y);
                if (dist[y] > far_d) {
                    far_d = dist[y];
                    far = y;
                }
            }
        }
    }
    for (Vertex t : touched) dist[t] = -1;
    return {far, far_d};
}

void fill_diameters(std::int64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                    const std::vector<std::vector<Vertex>>& members,
                    std::vector<ComponentStats>& stats, std::int64_t guard) {
    const Csr adj(n, edges);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<Vertex> touched, frontier;
    for (std::size_t c = 0; c < stats.size(); ++c) {
        auto& st = stats[c];
        if (st.size <= 1) {
            st.diameter = 0;
            st.diameter_exact = true;
            continue;
        }
        const auto& verts = members[c];
        if (st.surplus == 0) {
            // tree: double sweep is exact
            auto [far, d0] = bfs_far(adj, verts.front(), dist, touched, frontier);
            auto [far2, d1] = bfs_far(adj, far, dist, touched, frontier);
            (void)far2;
            (void)d0;
            st.diameter = d1;
            st.diameter_exact = true;
        } else if (st.size <= guard) {
            std::int64_t best = 0;
            for (Vertex v : verts)
                best = std::max(best, bfs_far(adj, v, dist, touched, frontier).second);
            st.diameter = best;
            st.diameter_exact = true;
        } else {
            // double sweep lower bound only
            auto [far, d0] = bfs_far(adj, verts.front(), dist, touched, frontier);
            (void)d0;
            st.diameter = bfs_far(adj, far, dist, touched, frontier).second;
            st.diameter_exact = false;
        }
    }
}

} // namespace

std::vector<ComponentStats> decompose_edges(
    std::int64_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
    const WeightSequence* w, const DecomposeOptions& opts) {
    if (w && w->n() != n)
        throw std::invalid_argument("decompose: weight sequence length mismatch");

    UnionFind uf(n);
    for (const auto& [u, v] : edges) uf.unite(u, v);

    std::vector<std::int64_t> incident(n, 0);
    for (const auto& [u, v] : edges) {
        ++incident[u];
        ++incident[v]; // loops count twice: still non-isolated
    }

    // group vertices by root
    std::vector<Vertex> root(n);
    std::vector<std::int64_t> comp_of_root(n, -1);
    std::int64_t ncomp = 0;
    for (Vertex v = 0; v < n; ++v) {
        root[v] = uf.find(v);
        if (comp_of_root[root[v]] < 0) comp_of_root[root[v]] = ncomp++;
    }

    std::vector<ComponentStats> stats(ncomp);
    std::vector<std::vector<Vertex>> members(ncomp);
    for (Vertex v = 0; v < n; ++v) {
        const std::int64_t c = comp_of_root[root[v]];
        auto& st = stats[c];
        if (st.size == 0) st.min_vertex = v; // vertices scanned in id order
        ++st.size;
        if (w) st.weight += w->weights[v];
        members[c].push_back(v);
    }
    for (const auto& [u, v] : edges) ++stats[comp_of_root[root[u]]].edges;
    for (auto& st : stats) st.surplus = st.edges - st.size + 1;

    if (opts.with_diameter) fill_diameters(n, edges, members, stats, opts.exact_diameter_guard);

    if (opts.isolated_zero) {
        for (std::size_t c = 0; c < stats.size(); ++c) {
            const Vertex v = stats[c].min_vertex;
            if (stats[c].size == 1 && incident[v] == 0) {
                stats[c].size = 0;
                stats[c].diameter = 0;
            }
        }
    }

    std::sort(stats.begin(), stats.end(), [](const ComponentStats& a, const ComponentStats& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.min_vertex < b.min_vertex;
    });
    return stats;
}

std::int64_t diameter(const SimpleGraph& g, std::int64_t exact_guard) {
    DecomposeOptions opts;
    opts.with_diameter = true;
    opts.exact_diameter_guard = exact_guard;
    const auto stats = decompose(g, nullptr, opts);
    if (stats.size() != 1)
        throw std::invalid_argument("diameter: graph is not connected");
    return stats[0].diameter;
}

namespace {

SusceptibilityReport susceptibilities_edges(std::int64_t n,
                                            const std::vector<std::pair<Vertex, Vertex>>& edges,
                                            const WeightSequence& w, bool with_distance) {
    if (w.n() != n)
        throw std::invalid_argument("susceptibilities: weight length mismatch");
    DecomposeOptions opts;
    opts.with_diameter = true;
    const auto stats = decompose_edges(n, edges, &w, opts);

    SusceptibilityReport rep;
    const double dn = static_cast<double>(n);
    for (const auto& st : stats) {
        rep.s2_star += st.weight * st.weight;
        rep.s3_star += st.weight * st.weight * st.weight;
        rep.spr_star += st.weight * static_cast<double>(st.size);
        rep.delta_max = std::max(rep.delta_max, st.diameter);
    }
    rep.s2_star /= dn;
    rep.s3_star /= dn;
    rep.spr_star /= dn;

    if (with_distance) {
        const Csr adj(n, edges);
        std::vector<std::int64_t> dist(n, -1);
        std::vector<Vertex> touched, frontier;
        double total = 0.0;
        for (Vertex v = 0; v < n; ++v) {
            // weighted BFS accumulation: sum_u w_v w_u d(v,u) over u in C(v)
            touched.clear();
            frontier.clear();
            frontier.push_back(v);
            dist[v] = 0;
            touched.push_back(v);
            double acc = 0.0;
            for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
                const Vertex x = frontier[qi];
                for (std::int64_t k = adj.offset[x]; k < adj.offset[x + 1]; ++k) {
                    const Vertex y = adj.nbr[k];
                    if (dist[y] < 0) {
                        dist[y] = dist[x] + 1;
                        touched.push_back(y);
                        frontier.push_back(y);
                        acc += static_cast<double>(dist[y]) * w.weights[y];
                    }
                }
            }
            total += w.weights[v] * acc;
            for (Vertex t : touched) dist[t] = -1;
        }
        rep.Dn_star = total / dn;
    }
    return rep;
}

template <class Graph>
double lower_mass_impl(const Graph& g, const WeightSequence& w, int rank, double delta,
                       const ScalingConstants& scal) {
    if (w.n() != g.n) throw std::invalid_argument("lower_mass: weight length mismatch");
    std::vector<std::pair<Vertex, Vertex>> edges;
    g.for_each_edge([&](Vertex u, Vertex v) { edges.emplace_back(u, v); });
    DecomposeOptions opts;
    opts.with_diameter = false;
    const auto stats = decompose_edges(g.n, edges, &w, opts);
    if (rank < 0 || rank >= static_cast<int>(stats.size()))
        throw std::invalid_argument("lower_mass: component rank out of range");

    // collect the members of the rank-th component by rerunning union-find
    UnionFind uf(g.n);
    for (const auto& [u, v] : edges) uf.unite(u, v);
    const Vertex want = uf.find(stats[rank].min_vertex);
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < g.n; ++v)
        if (uf.find(v) == want) verts.push_back(v);

    const std::int64_t radius =
        static_cast<std::int64_t>(std::ceil(delta * std::pow(static_cast<double>(g.n), scal.eta)));
    const Csr adj(g.n, edges);
    std::vector<std::int64_t> dist(g.n, -1);
    std::vector<Vertex> touched, frontier;
    double inf_mass = std::numeric_limits<double>::infinity();
    for (Vertex src : verts) {
        touched.clear();
        frontier.clear();
        frontier.push_back(src);
        dist[src] = 0;
        touched.push_back(src);
        double mass = w.weights[src];
        for (std::size_t qi = 0; qi < frontier.size(); ++qi) {
            const Vertex x = frontier[qi];
            if (dist[x] >= radius) continue;
            for (std::int64_t k = adj.offset[x]; k < adj.offset[x + 1]; ++k) {
                const Vertex y = adj.nbr[k];
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    touched.push_back(y);
                    frontier.push_back(y);
                    mass += w.weights[y];
                }
            }
        }
        inf_mass = std::min(inf_mass, mass);
        for (Vertex t : touched) dist[t] = -1;
    }
    return inf_mass * std::pow(static_cast<double>(g.n), -scal.rho);
}

} // namespace

SusceptibilityReport susceptibilities(const SimpleGraph& g, const WeightSequence& w,
                                      bool with_distance) {
    return susceptibilities_edges(g.n, g.edges, w, with_distance);
}

SusceptibilityReport susceptibilities(const MultiGraph& g, const WeightSequence& w,
                                      bool with_distance) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    g.for_each_edge([&](Vertex u, Vertex v) { edges.emplace_back(u, v); });
    return susceptibilities_edges(g.n, edges, w, with_distance);
}

double lower_mass(const SimpleGraph& g, const WeightSequence& w, int rank, double delta,
                  const ScalingConstants& scal) {
    return lower_mass_impl(g, w, rank, delta, scal);
}

double lower_mass(const MultiGraph& g, const WeightSequence& w, int rank, double delta,
                  const ScalingConstants& scal) {
    return lower_mass_impl(g, w, rank, delta, scal);
}

UVector order_u0(std::vector<std::pair<double, std::int64_t>> pairs) {
    for (const auto& [x, y] : pairs) {
        if (x < 0.0 || y < 0)
            throw std::invalid_argument("order_u0: entries must be non-negative");
        if (x == 0.0 && y > 0)
            throw std::invalid_argument("order_u0: y must be 0 whenever x is 0");
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    UVector u;
    u.pairs = std::move(pairs);
    return u;
}

double dist_u(const UVector& a, const UVector& b) {
    const std::size_t len = std::max(a.pairs.size(), b.pairs.size());
    double sq = 0.0, prod = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double x1 = i < a.pairs.size() ? a.pairs[i].first : 0.0;
        const double x2 = i < b.pairs.size() ? b.pairs[i].first : 0.0;
        const double y1 = i < a.pairs.size() ? static_cast<double>(a.pairs[i].second) : 0.0;
        const double y2 = i < b.pairs.size() ? static_cast<double>(b.pairs[i].second) : 0.0;
        sq += (x1 - x2) * (x1 - x2);
        prod += std::abs(x1 * y1 - x2 * y2);
    }
    return std::sqrt(sq) + prod;
}

double dist_l2(const std::vector<double>& x1, const std::vector<double>& x2) {
    const std::size_t len = std::max(x1.size(), x2.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double a = i < x1.size() ? x1[i] : 0.0;
        const double b = i < x2.size() ? x2[i] : 0.0;
        sq += (a - b) * (a - b);
    }
    return std::sqrt(sq);
}

void write_components_csv(const std::vector<ComponentStats>& comps, std::ostream& out) {
    out << "rank,size,edges,surplus,diameter,weight\n";
    for (std::size_t i = 0; i < comps.size(); ++i)
        out << i + 1 << ',' << comps[i].size << ',' << comps[i].edges << ','
            << comps[i].surplus << ',' << comps[i].diameter << ',' << comps[i].weight
            << '\n';
}

} // namespace critlab
