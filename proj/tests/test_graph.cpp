#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "critlab/graph.hpp"
#include "critlab/stats.hpp"

using namespace critlab;

namespace {

// canonical label of a small multigraph's matching: sorted list of vertex pairs
std::string matching_key(const MultiGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    g.for_each_edge([&](Vertex u, Vertex v) {
        edges.emplace_back(std::min(u, v), std::max(u, v));
    });
    std::sort(edges.begin(), edges.end());
    std::string key;
    for (const auto& [u, v] : edges)
        key += std::to_string(u) + "-" + std::to_string(v) + ";";
    return key;
}

} // namespace

TEST_CASE("config model: degree sequence preserved exactly") {
    Rng rng = make_rng(5);
    const DegreeSequence d = build_power_law_degrees(3.5, 300, 1.0, 0.0);
    const MultiGraph g = config_model(d, rng);
    CHECK(g.degrees() == d.degrees);
    std::int64_t degsum = 0;
    for (auto v : g.degrees()) degsum += v;
    CHECK(degsum == d.total);
    // matching is an involution without fixed points
    for (std::int64_t h = 0; h < g.half_edges(); ++h) {
        CHECK(g.matching[h] != h);
        CHECK(g.matching[g.matching[h]] == h);
    }
}

TEST_CASE("config model on d=(1,1): the single edge with probability 1") {
    Rng rng = make_rng(1);
    const DegreeSequence d = DegreeSequence::from({1, 1});
    for (int r = 0; r < 20; ++r) {
        const MultiGraph g = config_model(d, rng);
        CHECK(matching_key(g) == "0-1;");
    }
}

TEST_CASE("config model on d=(2): one self-loop with probability 1") {
    Rng rng = make_rng(2);
    const DegreeSequence d = DegreeSequence::from({2});
    const MultiGraph g = config_model(d, rng);
    CHECK(matching_key(g) == "0-0;");
}

TEST_CASE("config model on d=(2,1,1): matching law (1/3, 2/3) within 4 SE") {
    // enumeration oracle: 3 perfect matchings of 4 half-edges; one gives the
    // self-loop at vertex 1 plus edge {2,3}, two give the path 2-1-3
    Rng rng = make_rng(42);
    const DegreeSequence d = DegreeSequence::from({2, 1, 1});
    const int N = 100000;
    int self_loop = 0;
    for (int r = 0; r < N; ++r) {
        const MultiGraph g = config_model(d, rng);
        if (matching_key(g) == "0-0;1-2;") ++self_loop;
    }
    const double phat = double(self_loop) / N;
    const double se = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / N);
    CHECK(std::abs(phat - 1.0 / 3.0) <= 4.0 * se);
}

TEST_CASE("config model rejects odd totals") {
    Rng rng = make_rng(3);
    DegreeSequence d;
    d.degrees = {1, 1, 1};
    d.recompute_total(); // bypass the parity fix on purpose
    CHECK_THROWS(config_model(d, rng));
}

TEST_CASE("uniform simple: d=(1,1) accepted on the first try") {
    Rng rng = make_rng(4);
    const auto res = uniform_simple(DegreeSequence::from({1, 1}), rng, 10);
    REQUIRE(res.graph.has_value());
    CHECK(res.attempts == 1);
    CHECK(res.graph->edges.size() == 1);
}

TEST_CASE("uniform simple: d=(2,2,2) is the triangle") {
    Rng rng = make_rng(5);
    for (int r = 0; r < 50; ++r) {
        const auto res = uniform_simple(DegreeSequence::from({2, 2, 2}), rng, 1000);
        REQUIRE(res.graph.has_value());
        CHECK(res.graph->edges.size() == 3);
    }
}

TEST_CASE("uniform simple: d=(2,1,1) is the path 2-1-3") {
    Rng rng = make_rng(6);
    const auto res = uniform_simple(DegreeSequence::from({2, 1, 1}), rng, 1000);
    REQUIRE(res.graph.has_value());
    const std::vector<std::pair<Vertex, Vertex>> expect{{0, 1}, {0, 2}};
    CHECK(res.graph->edges == expect);
}

TEST_CASE("uniform simple: rejection failure carries the attempt count") {
    Rng rng = make_rng(7);
    // d=(2) can never be simple
    const auto res = uniform_simple(DegreeSequence::from({2}), rng, 17);
    CHECK(!res.graph.has_value());
    CHECK(res.attempts == 17);
}

TEST_CASE("uniform simple law on d=(2,2,1,1) matches enumeration within TV 0.01") {
    // simple realizations: vertex set {1,2,3,4} with degrees (2,2,1,1); the
    // simple graphs are path 3-1-2-4 / 4-1-2-3 variants and the triangle-free
    // 2-regular pair is impossible; enumerate matchings conditioned on simple.
    // Enumeration by brute force over all 15 matchings of 6 half-edges:
    // simple outcomes and their conditional probabilities.
    Rng rng = make_rng(8);
    const DegreeSequence d = DegreeSequence::from({2, 2, 1, 1});
    std::map<std::string, std::int64_t> emp;
    const int N = 100000;
    for (int r = 0; r < N; ++r) {
        const auto res = uniform_simple(d, rng, 10000);
        REQUIRE(res.graph.has_value());
        std::string key;
        for (const auto& [u, v] : res.graph->edges)
            key += std::to_string(u) + "-" + std::to_string(v) + ";";
        ++emp[key];
    }
    // oracle: uniform over simple graphs with this degree sequence. They are:
    // {12,13,24}, {12,14,23}, and {13,14,22?} invalid; enumerate by hand:
    // edges on vertices 0,1 deg2; 2,3 deg1: simple graphs: 0-1,0-2,1-3 and
    // 0-1,0-3,1-2 and 0-2,0-3 with 1-? impossible... brute force instead:
    std::map<std::string, double> oracle;
    // half-edges: 0,1 -> v0; 2,3 -> v1; 4 -> v2; 5 -> v3
    const Vertex owner[6] = {0, 0, 1, 1, 2, 3};
    std::vector<int> he{0, 1, 2, 3, 4, 5};
    int simple_count = 0;
    // enumerate all perfect matchings of 6 items (15 of them)
    std::vector<std::pair<int, int>> pairs(3);
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& rest) {
        if (rest.empty()) {
            std::vector<std::pair<Vertex, Vertex>> edges;
            bool simple = true;
            for (auto& [a, b] : pairs) {
                Vertex u = owner[a], v = owner[b];
                if (u == v) simple = false;
                edges.emplace_back(std::min(u, v), std::max(u, v));
            }
            std::sort(edges.begin(), edges.end());
            for (std::size_t i = 1; i < edges.size() && simple; ++i)
                if (edges[i] == edges[i - 1]) simple = false;
            if (simple) {
                std::string key;
                for (const auto& [u, v] : edges)
                    key += std::to_string(u) + "-" + std::to_string(v) + ";";
                oracle[key] += 1.0;
                ++simple_count;
            }
            return;
        }
        const int a = rest[0];
        for (std::size_t k = 1; k < rest.size(); ++k) {
            const int b = rest[k];
            std::vector<int> next;
            for (std::size_t j = 1; j < rest.size(); ++j)
                if (j != k) next.push_back(rest[j]);
            pairs[(6 - rest.size()) / 2] = {a, b};
            rec(next);
        }
    };
    rec(he);
    for (auto& [k, v] : oracle) v /= simple_count;

    double tv = 0.0;
    for (const auto& [k, v] : oracle) {
        const double phat = emp.count(k) ? double(emp[k]) / N : 0.0;
        tv += std::abs(phat - v);
    }
    for (const auto& [k, c] : emp)
        if (!oracle.count(k)) tv += double(c) / N;
    CHECK(tv / 2.0 < 0.01);
}

TEST_CASE("erased config model: d=(2) gives the empty graph with one erased loop") {
    Rng rng = make_rng(9);
    const auto res = erased_config_model(DegreeSequence::from({2}), rng);
    CHECK(res.graph.edges.empty());
    CHECK(res.erased_edges == 1);
}

TEST_CASE("erased config model: d=(2,2) edge with probability 2/3") {
    Rng rng = make_rng(10);
    const int N = 100000;
    int with_edge = 0;
    const DegreeSequence d = DegreeSequence::from({2, 2});
    for (int r = 0; r < N; ++r) {
        const auto res = erased_config_model(d, rng);
        CHECK(res.erased_edges >= 0);
        CHECK(res.erased_edges == 2 - res.graph.edge_count());
        if (res.graph.edge_count() == 1) ++with_edge;
    }
    const double phat = double(with_edge) / N;
    const double se = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / N);
    CHECK(std::abs(phat - 2.0 / 3.0) <= 4.0 * se);
}

TEST_CASE("kernel probabilities and ordering") {
    // w=(1,1): ell=2: GRG 1/3, NR 1-exp(-1/2)
    CHECK(kernel_prob(Kernel::GRG, 1, 1, 2, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(kernel_prob(Kernel::NorrosReittu, 1, 1, 2, 0) ==
          doctest::Approx(1.0 - std::exp(-0.5)));
    // pointwise: ChungLu >= NorrosReittu >= GRG on a weight grid
    for (double wi : {0.2, 1.0, 3.0, 10.0})
        for (double wj : {0.5, 2.0, 8.0}) {
            const double ell = 20.0;
            const double cl = kernel_prob(Kernel::ChungLu, wi, wj, ell, 0);
            const double nr = kernel_prob(Kernel::NorrosReittu, wi, wj, ell, 0);
            const double grg = kernel_prob(Kernel::GRG, wi, wj, ell, 0);
            CHECK(cl >= nr);
            CHECK(nr >= grg);
        }
}

TEST_CASE("inhomogeneous graph: two-vertex edge probabilities within 4 SE") {
    Rng rng = make_rng(11);
    const WeightSequence w = WeightSequence::from({1.0, 1.0});
    const int N = 100000;
    int grg_edges = 0, nr_edges = 0;
    for (int r = 0; r < N; ++r) {
        grg_edges += inhomogeneous_graph(w, Kernel::GRG, rng).edge_count();
        nr_edges += inhomogeneous_graph(w, Kernel::NorrosReittu, rng).edge_count();
    }
    auto check_p = [&](int count, double p) {
        const double se = std::sqrt(p * (1 - p) / N);
        CHECK(std::abs(double(count) / N - p) <= 4.0 * se);
    };
    check_p(grg_edges, 1.0 / 3.0);
    check_p(nr_edges, 1.0 - std::exp(-0.5));
}

TEST_CASE("skip sampling agrees with naive pair sampling in distribution") {
    Rng rng = make_rng(12);
    const WeightSequence w = WeightSequence::from({3.0, 2.0, 1.0, 0.5, 0.25});
    const int N = 40000;
    // per-pair empirical frequencies vs exact kernel probabilities
    std::map<std::pair<Vertex, Vertex>, int> counts;
    for (int r = 0; r < N; ++r) {
        const SimpleGraph g = inhomogeneous_graph(w, Kernel::GRG, rng);
        for (auto e : g.edges) ++counts[e];
    }
    for (Vertex i = 0; i < 5; ++i)
        for (Vertex j = i + 1; j < 5; ++j) {
            const double p =
                kernel_prob(Kernel::GRG, w.weights[i], w.weights[j], w.total, 0);
            const double phat = double(counts[{i, j}]) / N;
            const double se = std::sqrt(p * (1 - p) / N);
            CHECK(std::abs(phat - p) <= 4.5 * se);
        }
}

TEST_CASE("NRq kernel uses raw products and the thinning factor multiplies") {
    Rng rng = make_rng(13);
    const WeightSequence w = WeightSequence::from({1.0, 1.0});
    const double q = 0.5;
    const int N = 100000;
    int edges = 0, thinned_edges = 0;
    for (int r = 0; r < N; ++r) {
        edges += inhomogeneous_graph(w, Kernel::NRq, rng, q).edge_count();
        thinned_edges += inhomogeneous_graph(w, Kernel::NRq, rng, q, 0.5).edge_count();
    }
    const double p = 1.0 - std::exp(-q);
    const double se = std::sqrt(p / N);
    CHECK(std::abs(double(edges) / N - p) <= 4.0 * se);
    CHECK(std::abs(double(thinned_edges) / N - 0.5 * p) <= 4.0 * se);
}

TEST_CASE("edge list serialization round trip") {
    Rng rng = make_rng(14);
    const DegreeSequence d = build_power_law_degrees(2.5, 40, 1.0, 0.0);
    const auto res = erased_config_model(d, rng);
    std::stringstream ss;
    write_edge_list(res.graph, ss);
    const SimpleGraph back = read_edge_list(ss);
    CHECK(back.edges == res.graph.edges);
}
