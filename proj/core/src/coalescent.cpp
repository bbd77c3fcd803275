#include "critlab/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace critlab {

namespace {

// Fenwick tree over non-negative weights for categorical sampling.
class Fenwick {
  public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0), n_(n) {}

    void add(std::size_t i, double delta) {
        for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
    }
    double total() const { return prefix(n_); }

    // smallest i with prefix(i+1) > u
    std::size_t sample(double u) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while ((mask << 1) <= n_) mask <<= 1;
        for (; mask > 0; mask >>= 1) {
            const std::size_t next = pos + mask;
            if (next <= n_ && tree_[next] < u) {
                u -= tree_[next];
                pos = next;
            }
        }
        return pos; // 0-based index
    }

  private:
    double prefix(std::size_t i) const {
        double s = 0.0;
        for (std::size_t k = i; k > 0; k -= k & (~k + 1)) s += tree_[k];
        return s;
    }
    std::vector<double> tree_;
    std::size_t n_;
};

CoalTrajectory run_coalescent(const std::vector<double>& x0,
                              const std::vector<std::int64_t>& y0, double K1, double K2,
                              double T, Rng& rng) {
    const std::size_t m = x0.size();
    for (double v : x0)
        if (v <= 0.0) throw std::invalid_argument("coalescent: masses must be positive");

    std::vector<double> x(x0);
    std::vector<std::int64_t> y(y0);
    Fenwick fx(m), fx2(m);
    double S = 0.0, Q = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        fx.add(i, x[i]);
        fx2.add(i, x[i] * x[i]);
        S += x[i];
        Q += x[i] * x[i];
    }

    CoalTrajectory traj;
    double t = 0.0;
    std::size_t alive = m;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto sample_prop_x = [&]() -> std::size_t { return fx.sample(unif(rng) * S); };

    while (alive > 0) {
        const double merge_rate = K1 * std::max(0.0, S * S - Q) / 2.0;
        const double self_rate = K2 * Q;
        const double rate = merge_rate + self_rate;
        if (rate <= 0.0) break;
        t += exponential(rng, rate);
        if (t > T) break;

        if (unif(rng) * rate < merge_rate) {
            // pair {i,j} with probability proportional to x_i x_j:
            // draw i prop. to x_i (S - x_i) by rejection, then j != i prop. to x_j
            std::size_t i;
            do {
                i = sample_prop_x();
            } while (x[i] <= 0.0 || !(unif(rng) * S < S - x[i]));
            std::size_t j;
            do {
                j = sample_prop_x();
            } while (j == i || x[j] <= 0.0);
            // merge j into i
            const double xi = x[i], xj = x[j];
            fx.add(i, xj);
            fx.add(j, -xj);
            fx2.add(i, (xi + xj) * (xi + xj) - xi * xi);
            fx2.add(j, -xj * xj);
            Q += (xi + xj) * (xi + xj) - xi * xi - xj * xj;
            x[i] = xi + xj;
            x[j] = 0.0;
            y[i] += y[j];
            y[j] = 0;
            --alive;
            traj.events.push_back({t, CoalEventType::merge, static_cast<std::int64_t>(i),
                                   static_cast<std::int64_t>(j), false});
        } else {
            // self event: i proportional to x_i^2
            std::size_t i;
            do {
                i = fx2.sample(unif(rng) * Q);
            } while (x[i] <= 0.0);
            y[i] += 1;
            traj.events.push_back({t, CoalEventType::surplus, static_cast<std::int64_t>(i),
                                   -1, false});
        }
        if (alive <= 1 && K2 <= 0.0) break;
    }

    traj.t_end = std::min(t, T);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i)
        if (x[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] > x[b];
        return y[a] > y[b];
    });
    for (std::size_t i : order) {
        traj.final_masses.push_back(x[i]);
        traj.final_attrs.push_back(y[i]);
    }
    return traj;
}

} // namespace

UVector CoalTrajectory::final_uvector() const {
    std::vector<std::pair<double, std::int64_t>> pairs;
    for (std::size_t i = 0; i < final_masses.size(); ++i)
        pairs.emplace_back(final_masses[i],
                           i < final_attrs.size() ? final_attrs[i] : 0);
    return order_u0(std::move(pairs));
}

CoalTrajectory simulate_mc(const std::vector<double>& x0, double K1, double T, Rng& rng) {
    return run_coalescent(x0, std::vector<std::int64_t>(x0.size(), 0), K1, 0.0, T, rng);
}

CoalTrajectory simulate_amc(const std::vector<double>& x0,
                            const std::vector<std::int64_t>& y0, double K1, double K2,
                            double T, Rng& rng) {
    if (y0.size() != x0.size())
        throw std::invalid_argument("simulate_amc: x0 and y0 must have equal length");
    return run_coalescent(x0, y0, K1, K2, T, rng);
}

namespace {

struct DynUF {
    std::vector<Vertex> parent;
    explicit DynUF(std::int64_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Vertex find(Vertex v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
};

} // namespace

DynTrajectory dynamic_construction(const DegreeSequence& d, double T, Rng& rng) {
    if (d.total % 2 != 0)
        throw std::invalid_argument("dynamic_construction: total degree must be even");
    const std::int64_t n = d.n();
    const std::int64_t ell = d.total;

    DynTrajectory traj;
    MultiGraph& g = traj.state.graph;
    g.n = n;
    g.half_edge_owner = half_edge_owners(d);
    g.matching.assign(ell, -1);

    std::vector<std::int64_t> pool(ell);
    std::iota(pool.begin(), pool.end(), 0);
    std::int64_t s1 = ell;

    DynUF uf(n);
    std::vector<std::int64_t> open_count(n), surplus(n, 0);
    for (Vertex v = 0; v < n; ++v) open_count[v] = d.degrees[v];

    double t = 0.0;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (s1 >= 2) {
        t += exponential(rng, static_cast<double>(s1));
        if (t > T) {
            t = T;
            break;
        }
        // two distinct open half-edges, uniformly
        const std::int64_t ia = std::uniform_int_distribution<std::int64_t>(0, s1 - 1)(rng);
        const std::int64_t a = pool[ia];
        std::swap(pool[ia], pool[s1 - 1]);
        --s1;
        const std::int64_t ib = std::uniform_int_distribution<std::int64_t>(0, s1 - 1)(rng);
        const std::int64_t b = pool[ib];
        std::swap(pool[ib], pool[s1 - 1]);
        --s1;
        pool.resize(s1);
        g.matching[a] = b;
        g.matching[b] = a;

        const Vertex ra = uf.find(g.half_edge_owner[a]);
        const Vertex rb = uf.find(g.half_edge_owner[b]);
        CoalEvent ev;
        ev.time = t;
        if (ra == rb) {
            open_count[ra] -= 2;
            surplus[ra] += 1;
            ev.type = CoalEventType::surplus;
            ev.i = ra;
        } else {
            const Vertex keep = std::min(ra, rb), drop = std::max(ra, rb);
            uf.parent[drop] = keep;
            open_count[keep] += open_count[drop] - 2;
            open_count[drop] = 0;
            surplus[keep] += surplus[drop];
            surplus[drop] = 0;
            ev.type = CoalEventType::merge;
            ev.i = keep;
            ev.j = drop;
        }
        traj.events.push_back(ev);
        traj.times.push_back(t);
        traj.s1_series.push_back(s1);
    }

    traj.state.time = std::min(t, T);
    traj.state.open = std::move(pool);
    traj.state.component.resize(n);
    for (Vertex v = 0; v < n; ++v) traj.state.component[v] = uf.find(v);
    traj.state.open_count = std::move(open_count);
    traj.state.surplus = std::move(surplus);
    return traj;
}

UVector ModifiedResult::final_uvector() const {
    std::vector<std::pair<double, std::int64_t>> pairs;
    for (std::size_t i = 0; i < final_masses.size(); ++i)
        pairs.emplace_back(final_masses[i], final_surplus[i]);
    return order_u0(std::move(pairs));
}

ModifiedResult modified_process(const DynState& start, double T, Rng& rng) {
    const std::int64_t s1 = start.s1();
    ModifiedResult res;
    if (s1 < 2) {
        res.t_end = start.time;
        return res;
    }

    // masses and surplus on the frozen components; half-edges stay selectable
    const std::int64_t n = start.graph.n;
    DynUF uf(n);
    for (Vertex v = 0; v < n; ++v) uf.parent[v] = start.component[v];
    std::vector<std::int64_t> mass(start.open_count);
    std::vector<std::int64_t> surp(start.surplus);
    std::vector<char> paired(start.graph.half_edges(), 0); // thinned dynamic copy

    double t = start.time;
    while (true) {
        t += exponential(rng, static_cast<double>(s1));
        if (t > T) break;
        const std::int64_t ia = std::uniform_int_distribution<std::int64_t>(0, s1 - 1)(rng);
        std::int64_t ib;
        do {
            ib = std::uniform_int_distribution<std::int64_t>(0, s1 - 1)(rng);
        } while (ib == ia);
        const std::int64_t a = start.open[ia], b = start.open[ib];

        CoalEvent ev;
        ev.time = t;
        ev.bad = paired[a] || paired[b]; // extra edge of the kept-alive process
        if (!ev.bad) {
            paired[a] = paired[b] = 1;
        } else {
            ++res.bad_edges;
        }

        const Vertex ra = uf.find(start.graph.half_edge_owner[a]);
        const Vertex rb = uf.find(start.graph.half_edge_owner[b]);
        if (ra == rb) {
            surp[ra] += 1;
            ev.type = CoalEventType::surplus;
            ev.i = ra;
        } else {
            const Vertex keep = std::min(ra, rb), drop = std::max(ra, rb);
            uf.parent[drop] = keep;
            mass[keep] += mass[drop];
            mass[drop] = 0;
            surp[keep] += surp[drop];
            surp[drop] = 0;
            ev.type = CoalEventType::merge;
            ev.i = keep;
            ev.j = drop;
        }
        res.events.push_back(ev);
    }

    res.t_end = T;
    std::vector<Vertex> roots;
    for (Vertex v = 0; v < n; ++v)
        if (uf.find(v) == v && mass[v] > 0) roots.push_back(v);
    std::sort(roots.begin(), roots.end(), [&](Vertex x, Vertex y) {
        if (mass[x] != mass[y]) return mass[x] > mass[y];
        return surp[x] > surp[y];
    });
    for (Vertex r : roots) {
        res.final_masses.push_back(static_cast<double>(mass[r]));
        res.final_surplus.push_back(surp[r]);
    }
    return res;
}

double time_map(double nu_n, double c_n, double lambda) {
    if (nu_n <= 1.0) throw std::invalid_argument("time_map: nu_n must exceed 1");
    return 0.5 * std::log(nu_n / (nu_n - 1.0)) + lambda / (2.0 * (nu_n - 1.0) * c_n);
}

CouplingCheck nr_mc_coupling_check(const std::vector<double>& x, double t, Rng& rng,
                                   int n_samples) {
    WeightSequence w = WeightSequence::from(x);

    auto key_of = [](std::vector<double> masses) {
        std::sort(masses.begin(), masses.end(), std::greater<double>());
        std::string key;
        char buf[32];
        for (double m : masses) {
            std::snprintf(buf, sizeof(buf), "%.6f|", m);
            key += buf;
        }
        return key;
    };

    std::map<std::string, std::int64_t> mc_counts, nr_counts;
    for (int s = 0; s < n_samples; ++s) {
        const CoalTrajectory traj = simulate_mc(x, 1.0, t, rng);
        ++mc_counts[key_of(traj.final_masses)];

        const SimpleGraph g = inhomogeneous_graph(w, Kernel::NRq, rng, t);
        DecomposeOptions opts;
        opts.with_diameter = false;
        const auto comps = decompose(g, &w, opts);
        std::vector<double> masses;
        for (const auto& c : comps) masses.push_back(c.weight);
        ++nr_counts[key_of(masses)];
    }

    CouplingCheck chk;
    std::map<std::string, double> diff;
    for (const auto& [k, c] : mc_counts) diff[k] += static_cast<double>(c);
    for (const auto& [k, c] : nr_counts) diff[k] -= static_cast<double>(c);
    double tv = 0.0;
    for (const auto& [k, v] : diff) tv += std::abs(v);
    chk.tv = tv / (2.0 * n_samples);
    chk.distinct_outcomes = static_cast<std::int64_t>(diff.size());
    return chk;
}

void write_events_csv(const std::vector<CoalEvent>& events, std::ostream& out) {
    out << "time,type,i,j\n";
    static const char* names[] = {"merge", "surplus", "pair"};
    for (const auto& ev : events)
        out << ev.time << ',' << names[static_cast<int>(ev.type)] << ',' << ev.i << ','
            << ev.j << '\n';
}

} // namespace critlab
