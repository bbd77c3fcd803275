#include "critlab/ptree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace critlab {

double ptree_prob(const PTree& t, const std::vector<double>& p) {
    double prob = 1.0;
    for (Vertex v = 0; v < t.m; ++v)
        prob *= std::pow(p[v], static_cast<double>(t.children(v)));
    return prob;
}

namespace {

void validate_pmf(const std::vector<double>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (v <= 0.0) throw std::invalid_argument("p-tree: pmf entries must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("p-tree: pmf must sum to 1");
}

Vertex draw_from_pmf(const std::vector<double>& p, Rng& rng) {
    double u = uniform01(rng);
    for (std::size_t i = 0; i < p.size(); ++i) {
        u -= p[i];
        if (u <= 0.0) return static_cast<Vertex>(i);
    }
    return static_cast<Vertex>(p.size() - 1);
}

} // namespace

PTree ptree_direct(const std::vector<double>& p, Rng& rng, PTreeMode mode) {
    validate_pmf(p);
    const int m = static_cast<int>(p.size());
    PTree t;
    t.m = m;
    t.parent.assign(m, -1);
    t.child_order.assign(m, {});

    std::vector<char> seen(m, 0);
    Vertex prev = draw_from_pmf(p, rng);
    t.root = prev;
    seen[prev] = 1;
    int found = 1;

    if (mode == PTreeMode::birthday) {
        // verbatim repeat-time bookkeeping: R_l = l-th time the sample repeats
        // a previously seen value; the values Y_{R_l - 1} are recorded (they
        // are iid p, independent of the tree).
        std::vector<Vertex> repeat_values;
        while (found < m) {
            const Vertex y = draw_from_pmf(p, rng);
            if (seen[y]) {
                repeat_values.push_back(prev);
            } else {
                seen[y] = 1;
                ++found;
                t.parent[y] = prev;
                t.child_order[prev].push_back(y);
            }
            prev = y;
        }
        (void)repeat_values;
    } else {
        while (found < m) {
            const Vertex y = draw_from_pmf(p, rng);
            if (!seen[y]) {
                seen[y] = 1;
                ++found;
                t.parent[y] = prev;
                t.child_order[prev].push_back(y);
            }
            prev = y;
        }
    }
    return t;
}

TiltState compute_tilt(PTree tree, const std::vector<double>& p, double a) {
    const int m = tree.m;
    TiltState st;
    st.depth_first_order.reserve(m);
    st.permitted_mass.assign(m, 0.0);

    // preorder walk carrying A(v) = A(parent) + p-mass of right siblings
    std::vector<std::pair<Vertex, double>> stack;
    stack.emplace_back(tree.root, 0.0);
    while (!stack.empty()) {
        const auto [v, A] = stack.back();
        stack.pop_back();
        st.depth_first_order.push_back(v);
        st.permitted_mass[v] = A;
        const auto& kids = tree.child_order[v];
        double right = 0.0;
        std::vector<double> right_mass(kids.size());
        for (std::size_t i = kids.size(); i-- > 0;) {
            right_mass[i] = right;
            right += p[kids[i]];
        }
        // push right-to-left so the leftmost child is visited first
        for (std::size_t i = kids.size(); i-- > 0;)
            stack.emplace_back(kids[i], A + right_mass[i]);
    }

    double Lambda = 0.0;
    for (Vertex v = 0; v < m; ++v) Lambda += p[v] * st.permitted_mass[v];
    Lambda *= a;
    st.Lambda = Lambda;

    // L(t) = prod_edges (exp(a p_k p_l) - 1)/(a p_k p_l) * exp(Lambda)
    double logL = Lambda;
    for (Vertex v = 0; v < m; ++v) {
        if (tree.parent[v] < 0) continue;
        const double x = a * p[v] * p[tree.parent[v]];
        logL += std::log(x > 1e-12 ? std::expm1(x) / x : 1.0 + x / 2.0);
    }
    st.tilt_value = std::exp(logL);
    st.tree = std::move(tree);
    return st;
}

void enumerate_plane_trees(int m, const std::function<void(const PTree&)>& visit) {
    if (m < 1 || m > 8)
        throw std::invalid_argument("enumerate_plane_trees: m must lie in 1..8");
    PTree t;
    t.m = m;
    if (m == 1) {
        t.root = 0;
        t.parent = {-1};
        t.child_order = {{}};
        visit(t);
        return;
    }

    std::vector<Vertex> parent(m);
    std::vector<Vertex> others;
    for (Vertex root = 0; root < m; ++root) {
        others.clear();
        for (Vertex v = 0; v < m; ++v)
            if (v != root) others.push_back(v);
        const int k = m - 1;
        std::vector<int> choice(k, 0); // parent index per non-root vertex

        while (true) {
            // build the parent map and test acyclicity (all reach the root)
            std::fill(parent.begin(), parent.end(), -1);
            for (int i = 0; i < k; ++i) parent[others[i]] = static_cast<Vertex>(choice[i]);
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                Vertex v = others[i];
                int hops = 0;
                while (v != root && hops <= m) {
                    v = parent[v];
                    if (v < 0) break;
                    ++hops;
                }
                ok = (v == root);
            }
            if (ok) {
                t.root = root;
                t.parent = parent;
                t.child_order.assign(m, {});
                for (int i = 0; i < k; ++i) t.child_order[parent[others[i]]].push_back(others[i]);
                // iterate over all child orderings (odometer of permutations)
                std::vector<Vertex> perm_state;
                std::function<void(int)> rec = [&](int v) {
                    if (v == m) {
                        visit(t);
                        return;
                    }
                    auto& kids = t.child_order[v];
                    if (kids.size() < 2) {
                        rec(v + 1);
                        return;
                    }
                    std::sort(kids.begin(), kids.end());
                    do {
                        rec(v + 1);
                    } while (std::next_permutation(kids.begin(), kids.end()));
                };
                rec(0);
            }
            // advance the odometer
            int pos = 0;
            while (pos < k) {
                if (++choice[pos] < m) break;
                choice[pos] = 0;
                ++pos;
            }
            if (pos == k) break;
        }
    }
}

namespace {

double ordered_prob(const PTree& t, const std::vector<double>& p) {
    double prob = ptree_prob(t, p);
    for (Vertex v = 0; v < t.m; ++v) {
        double fact = 1.0;
        for (std::int64_t c = 2; c <= t.children(v); ++c) fact *= static_cast<double>(c);
        prob /= fact;
    }
    return prob;
}

TiltedDraw tilted_enumerate(const std::vector<double>& p, double a, Rng& rng) {
    const int m = static_cast<int>(p.size());
    double Z = 0.0;
    enumerate_plane_trees(m, [&](const PTree& t) {
        TiltState st = compute_tilt(t, p, a);
        Z += ordered_prob(t, p) * st.tilt_value;
    });
    const double u = uniform01(rng) * Z;
    double acc = 0.0;
    TiltedDraw draw;
    bool captured = false;
    enumerate_plane_trees(m, [&](const PTree& t) {
        if (captured) return;
        TiltState st = compute_tilt(t, p, a);
        acc += ordered_prob(t, p) * st.tilt_value;
        if (acc >= u) {
            draw.state = std::move(st);
            captured = true;
        }
    });
    if (!captured)
        throw std::runtime_error("ptree_tilted: enumeration failed to capture a draw");
    draw.weight = 1.0;
    draw.ess = 1.0;
    draw.exact = true;
    return draw;
}

TiltedDraw tilted_importance(const std::vector<double>& p, double a, int M, Rng& rng) {
    std::vector<TiltState> states;
    states.reserve(M);
    std::vector<double> weights(M);
    double wsum = 0.0, wsq = 0.0;
    for (int i = 0; i < M; ++i) {
        PTree t = ptree_direct(p, rng, PTreeMode::sequential);
        for (auto& kids : t.child_order) // uniform child order gives P_ord
            std::shuffle(kids.begin(), kids.end(), rng);
        states.push_back(compute_tilt(std::move(t), p, a));
        weights[i] = states.back().tilt_value; // L(t) >= 1
        wsum += weights[i];
        wsq += weights[i] * weights[i];
    }
    double u = uniform01(rng) * wsum;
    int pick = M - 1;
    for (int i = 0; i < M; ++i) {
        u -= weights[i];
        if (u <= 0.0) {
            pick = i;
            break;
        }
    }
    TiltedDraw draw;
    draw.state = std::move(states[pick]);
    draw.weight = weights[pick];
    draw.ess = wsum * wsum / wsq;
    draw.exact = false;
    return draw;
}

} // namespace

TiltedDraw ptree_tilted(const std::vector<double>& p, double a, Rng& rng,
                        const TiltedSampler& sampler) {
    validate_pmf(p);
    if (a <= 0.0) throw std::invalid_argument("ptree_tilted: a must be positive");
    if (sampler.kind == TiltedSampler::enumerate_exact) {
        if (p.size() > 8)
            throw std::invalid_argument("ptree_tilted: enumerate mode requires m <= 8");
        return tilted_enumerate(p, a, rng);
    }
    return tilted_importance(p, a, std::max(1, sampler.proposals), rng);
}

SimpleGraph pcon_graph(const std::vector<double>& p, double a, Rng& rng,
                       const TiltedSampler& sampler, TiltState* state_out) {
    TiltedDraw draw = ptree_tilted(p, a, rng, sampler);
    TiltState& st = draw.state;
    const PTree& t = st.tree;
    const int m = t.m;

    SimpleGraph g;
    g.n = m;
    for (Vertex v = 0; v < m; ++v)
        if (t.parent[v] >= 0)
            g.edges.emplace_back(std::min(v, t.parent[v]), std::max(v, t.parent[v]));

    const std::int64_t nstar =
        st.Lambda > 0.0 ? std::poisson_distribution<std::int64_t>(st.Lambda)(rng) : 0;

    // first endpoint proportional to p_v A(v); second endpoint u with
    // probability p_u / A(v) over the permitted set of v
    std::vector<double> first_w(m);
    double first_total = 0.0;
    for (Vertex v = 0; v < m; ++v) {
        first_w[v] = p[v] * st.permitted_mass[v];
        first_total += first_w[v];
    }
    for (std::int64_t s = 0; s < nstar; ++s) {
        double u = uniform01(rng) * first_total;
        Vertex v = m - 1;
        for (Vertex i = 0; i < m; ++i) {
            u -= first_w[i];
            if (u <= 0.0) {
                v = i;
                break;
            }
        }
        // walk the root path of v; permitted endpoints are right siblings of
        // the path at each proper ancestor
        double pick = uniform01(rng) * st.permitted_mass[v];
        Vertex second = -1;
        Vertex node = v;
        while (t.parent[node] >= 0 && second < 0) {
            const Vertex par = t.parent[node];
            const auto& kids = t.child_order[par];
            std::size_t at = 0;
            while (kids[at] != node) ++at;
            for (std::size_t i = at + 1; i < kids.size(); ++i) {
                pick -= p[kids[i]];
                if (pick <= 0.0) {
                    second = kids[i];
                    break;
                }
            }
            node = par;
        }
        if (second < 0) continue; // numerical underflow of the mass walk
        st.surplus_endpoints.emplace_back(v, second);
        g.edges.emplace_back(std::min(v, second), std::max(v, second));
    }

    // step (S5): remove duplicate surplus edges
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    if (state_out) *state_out = std::move(st);
    return g;
}

} // namespace critlab
