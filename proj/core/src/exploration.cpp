#include "critlab/exploration.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace critlab {

namespace {

// Swap-removable pool of half-edge ids supporting uniform draws.
class HalfEdgePool {
  public:
    explicit HalfEdgePool(std::int64_t m) : ids_(m), pos_(m) {
        for (std::int64_t i = 0; i < m; ++i) {
            ids_[i] = i;
            pos_[i] = i;
        }
    }

    bool empty() const { return size_ == 0; }
    std::int64_t size() const { return size_; }
    bool contains(std::int64_t h) const { return pos_[h] < size_; }

    std::int64_t draw(Rng& rng) const {
        return ids_[std::uniform_int_distribution<std::int64_t>(0, size_ - 1)(rng)];
    }

    void remove(std::int64_t h) {
        const std::int64_t p = pos_[h];
        const std::int64_t last = ids_[--size_];
        ids_[p] = last;
        pos_[last] = p;
        ids_[size_] = h;
        pos_[h] = size_;
    }

  private:
    std::vector<std::int64_t> ids_;
    std::vector<std::int64_t> pos_;
    std::int64_t size_ = 0;

  public:
    void reset_full() { size_ = static_cast<std::int64_t>(ids_.size()); }
};

std::vector<std::int64_t> vertex_offsets(const DegreeSequence& d) {
    std::vector<std::int64_t> first(d.n() + 1, 0);
    for (std::int64_t v = 0; v < d.n(); ++v) first[v + 1] = first[v] + d.degrees[v];
    return first;
}

} // namespace

ExploreResult explore_dfs(const DegreeSequence& d, Rng& rng) {
    if (d.total % 2 != 0)
        throw std::invalid_argument("explore_dfs: total degree must be even");

    // The walk is a deterministic traversal of a uniform matching, so the
    // matching is drawn up front; root choices consume extra randomness below.
    ExploreResult res;
    res.graph = config_model(d, rng);
    const MultiGraph& g = res.graph;
    const std::int64_t n = d.n();
    const std::int64_t m = g.half_edges();
    const std::vector<std::int64_t> first = vertex_offsets(d);

    enum : std::uint8_t { SLEEPING = 0, ACTIVE = 1, DEAD = 2 };
    std::vector<std::uint8_t> status(m, SLEEPING);
    std::vector<char> discovered(n, 0);

    HalfEdgePool sleeping(m);
    sleeping.reset_full();

    std::vector<std::int64_t> stack; // active half-edges, top = smallest
    stack.reserve(1024);

    ExplorationWalk& w = res.walk;
    w.mode = WalkMode::dfs_vertex;
    w.values.reserve(n + 1);
    w.values.push_back(0);
    w.events.reserve(n);
    w.cycle_counts.reserve(n);
    w.discovered_order.reserve(n);

    std::int64_t S = 0;
    std::int64_t next_target = -2;
    Vertex isolated_scan = 0;

    // Reveal cycle pairs among `others` (the new vertex's half-edges except the
    // entry one) against the active set and against each other; push survivors
    // in descending id so the lowest id pops first.
    auto settle_vertex = [&](Vertex v, std::int64_t entry) -> std::int32_t {
        std::int32_t cycle_pairs = 0;
        const std::int64_t lo = first[v], hi = first[v + 1];
        for (std::int64_t h = lo; h < hi; ++h) {
            if (h == entry || status[h] == DEAD) continue;
            if (sleeping.contains(h)) sleeping.remove(h);
            const std::int64_t p = g.matching[h];
            if (status[p] == ACTIVE) {
                // back-edge or multi-edge into the active set
                status[h] = DEAD;
                status[p] = DEAD;
                ++cycle_pairs;
            } else if (p != entry && p > h && p >= lo && p < hi && status[p] != DEAD) {
                // self-loop at v (the pair is revealed once, at the smaller id)
                if (sleeping.contains(p)) sleeping.remove(p);
                status[h] = DEAD;
                status[p] = DEAD;
                ++cycle_pairs;
            }
        }
        for (std::int64_t h = hi - 1; h >= lo; --h) {
            if (h == entry || status[h] != SLEEPING) continue;
            status[h] = ACTIVE;
            stack.push_back(h);
        }
        return cycle_pairs;
    };

    std::int64_t discovered_count = 0;
    while (discovered_count < n) {
        while (!stack.empty() && status[stack.back()] == DEAD) stack.pop_back();

        Vertex v;
        std::int64_t entry = -1;
        WalkEvent ev;
        if (!stack.empty()) {
            // S2: explore the smallest active half-edge; its partner sleeps.
            const std::int64_t a = stack.back();
            stack.pop_back();
            const std::int64_t b = g.matching[a];
            status[a] = DEAD;
            status[b] = DEAD;
            sleeping.remove(b);
            v = g.half_edge_owner[b];
            entry = b;
            ev = WalkEvent::new_vertex;
        } else if (!sleeping.empty()) {
            // S3: fresh component, root half-edge uniform over sleeping ones.
            const std::int64_t a = sleeping.draw(rng);
            v = g.half_edge_owner[a];
            entry = -1;
            ev = WalkEvent::root;
        } else {
            // only zero-degree vertices remain
            while (discovered[isolated_scan]) ++isolated_scan;
            v = isolated_scan;
            ev = WalkEvent::root;
        }

        discovered[v] = 1;
        ++discovered_count;
        w.discovered_order.push_back(v);
        const std::int32_t c = (d.degrees[v] > 0) ? settle_vertex(v, entry) : 0;
        S += d.degrees[v] - 2 - 2 * static_cast<std::int64_t>(c);
        w.values.push_back(S);
        w.events.push_back(ev);
        w.cycle_counts.push_back(c);
        if (c > 0) w.surplus_times.push_back(w.stages());
        if (S == next_target) {
            w.tau.push_back(w.stages());
            next_target -= 2;
        }
    }
    return res;
}

ExploreResult explore_unit(const DegreeSequence& d, Rng& rng) {
    if (d.total % 2 != 0)
        throw std::invalid_argument("explore_unit: total degree must be even");

    ExploreResult res;
    const std::int64_t n = d.n();
    const std::int64_t m = d.total;
    const std::vector<std::int64_t> first = vertex_offsets(d);

    MultiGraph& g = res.graph;
    g.n = n;
    g.half_edge_owner = half_edge_owners(d);
    g.matching.assign(m, -1);

    HalfEdgePool alive(m);
    alive.reset_full();
    std::vector<char> discovered(n, 0);
    std::vector<std::int64_t> cursor(n, 0); // next candidate half-edge per vertex

    std::deque<Vertex> queue; // discovered vertices with (possibly) active half-edges

    ExplorationWalk& w = res.walk;
    w.mode = WalkMode::unit_edge;
    w.values.reserve(m / 2 + n + 1);
    w.values.push_back(0);
    w.discovered_order.reserve(n);

    std::int64_t S = 0;
    std::int64_t next_target = -2;
    std::int64_t discovered_count = 0;
    Vertex isolated_scan = 0;

    auto next_active = [&](Vertex v) -> std::int64_t {
        std::int64_t h = std::max(cursor[v], first[v]);
        while (h < first[v + 1] && !alive.contains(h)) ++h;
        cursor[v] = h;
        return h < first[v + 1] ? h : -1;
    };

    auto push_stage = [&](std::int64_t incr, WalkEvent ev) {
        S += incr;
        w.values.push_back(S);
        w.events.push_back(ev);
        if (S == next_target) {
            w.tau.push_back(w.stages());
            next_target -= 2;
        }
    };

    while (discovered_count < n || !alive.empty()) {
        // drop exhausted vertices from the front of the queue (costs no stage)
        while (!queue.empty() && next_active(queue.front()) < 0) queue.pop_front();

        if (queue.empty()) {
            if (!alive.empty()) {
                // root stage: vertex chosen proportional to degree, no pairing
                const std::int64_t a = alive.draw(rng);
                const Vertex v = g.half_edge_owner[a];
                discovered[v] = 1;
                ++discovered_count;
                w.discovered_order.push_back(v);
                queue.push_back(v);
                push_stage(d.degrees[v] - 2, WalkEvent::root);
            } else {
                while (discovered[isolated_scan]) ++isolated_scan;
                discovered[isolated_scan] = 1;
                ++discovered_count;
                w.discovered_order.push_back(isolated_scan);
                push_stage(-2, WalkEvent::root);
            }
            continue;
        }

        // pairing stage: lowest-id active half-edge of the exploring vertex,
        // partner uniform over all other unpaired half-edges
        const Vertex v = queue.front();
        const std::int64_t e = next_active(v);
        alive.remove(e);
        const std::int64_t f = alive.draw(rng);
        alive.remove(f);
        g.matching[e] = f;
        g.matching[f] = e;

        const Vertex u = g.half_edge_owner[f];
        if (!discovered[u]) {
            discovered[u] = 1;
            ++discovered_count;
            w.discovered_order.push_back(u);
            if (next_active(u) >= 0) queue.push_back(u);
            push_stage(d.degrees[u] - 2, WalkEvent::new_vertex);
        } else if (u == v) {
            w.loop_times.push_back(w.stages() + 1);
            push_stage(-2, WalkEvent::loop);
        } else {
            w.surplus_times.push_back(w.stages() + 1);
            push_stage(-2, WalkEvent::surplus);
        }
    }
    return res;
}

std::vector<ComponentFromWalk> components_from_walk(const ExplorationWalk& w,
                                                    bool count_loops) {
    if (!w.complete())
        throw std::invalid_argument("components_from_walk: walk is incomplete");

    std::vector<ComponentFromWalk> comps;
    comps.reserve(w.tau.size());
    std::int64_t prev = 0;
    for (std::int64_t t : w.tau) {
        ComponentFromWalk c;
        if (w.mode == WalkMode::dfs_vertex) {
            c.size = t - prev;
            std::int64_t cyc = 0;
            for (std::int64_t s = prev + 1; s <= t; ++s) cyc += w.cycle_counts[s - 1];
            c.surplus = cyc;
            c.edges = c.size - 1 + c.surplus;
        } else {
            std::int64_t loops = 0, surplus = 0, news = 0;
            for (std::int64_t s = prev + 1; s <= t; ++s) {
                switch (w.events[s - 1]) {
                    case WalkEvent::loop: ++loops; break;
                    case WalkEvent::surplus: ++surplus; break;
                    case WalkEvent::new_vertex: ++news; break;
                    case WalkEvent::root: break;
                }
            }
            c.size = news + 1;
            c.edges = t - prev - 1 - (count_loops ? 0 : loops);
            c.surplus = surplus + (count_loops ? loops : 0);
        }
        comps.push_back(c);
        prev = t;
    }
    return comps;
}

RescaledPath rescale_walk(const ExplorationWalk& w, const ScalingConstants& scal) {
    RescaledPath p;
    p.space_scale = scal.a_n;
    p.time_scale = scal.b_n;
    const std::size_t T = w.values.size();
    p.times.resize(T);
    p.values.resize(T);
    for (std::size_t i = 0; i < T; ++i) {
        p.times[i] = static_cast<double>(i) / p.time_scale;
        p.values[i] = static_cast<double>(w.values[i]) / p.space_scale;
    }
    return p;
}

SizeBiasedCheck size_biased_check(const DegreeSequence& d, Rng& rng, int runs) {
    SizeBiasedCheck chk;
    chk.first_vertex_counts.assign(d.n(), 0);
    chk.expected_probs.resize(d.n());
    for (std::int64_t j = 0; j < d.n(); ++j)
        chk.expected_probs[j] =
            static_cast<double>(d.degrees[j]) / static_cast<double>(d.total);
    for (int r = 0; r < runs; ++r) {
        const ExploreResult res = explore_dfs(d, rng);
        ++chk.first_vertex_counts[res.walk.discovered_order.front()];
    }
    chk.dof = -1;
    for (std::int64_t j = 0; j < d.n(); ++j) {
        const double e = chk.expected_probs[j] * runs;
        if (e > 0.0) {
            const double diff = static_cast<double>(chk.first_vertex_counts[j]) - e;
            chk.chi2 += diff * diff / e;
            ++chk.dof;
        }
    }
    return chk;
}

void write_walk_csv(const ExplorationWalk& w, std::ostream& out) {
    out << "stage,S,event\n0," << w.values[0] << ",\n";
    static const char* names[] = {"root", "new", "surplus", "loop"};
    for (std::int64_t s = 1; s <= w.stages(); ++s)
        out << s << ',' << w.values[s] << ','
            << names[static_cast<int>(w.events[s - 1])] << '\n';
}

} // namespace critlab
