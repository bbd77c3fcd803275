// critlab -- command line front end: graph generation, percolation,
// exploration walks, component statistics, limit-process sampling, coalescent
// simulation, the hub limit graph, and the experiment runner.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "critlab/coalescent.hpp"
#include "critlab/components.hpp"
#include "critlab/degrees.hpp"
#include "critlab/exploration.hpp"
#include "critlab/graph.hpp"
#include "critlab/harness.hpp"
#include "critlab/io.hpp"
#include "critlab/limitgraph.hpp"
#include "critlab/limits.hpp"
#include "critlab/percolation.hpp"
#include "critlab/ptree.hpp"
#include "critlab/rng.hpp"

namespace {

using namespace critlab;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(std::int64_t seed_flag) {
    const std::uint64_t seed =
        seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : entropy_seed();
    std::cout << "seed: " << seed << '\n';
    return seed;
}

DegreeSequence read_degrees_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open degrees file: " + path);
    // a degrees file is strictly one integer per line
    std::string line;
    std::vector<std::int64_t> degrees;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::int64_t a;
        if (!(ls >> a)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw UsageError("not a degrees file (bad line): " + path);
        }
        std::int64_t b;
        if (ls >> b)
            throw UsageError("expected a degree sequence (one integer per line), got an edge list: " +
                             path);
        degrees.push_back(a);
    }
    if (degrees.empty()) throw UsageError("empty degrees file: " + path);
    return DegreeSequence::from(std::move(degrees));
}

SimpleGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open edge list: " + path);
    return read_edge_list(in);
}

void write_text(const std::string& path, const std::string& content) {
    atomic_write_file(path, content);
}

int cmd_gen(const std::string& model, double tau, std::int64_t n, double cf,
            double lambda, std::int64_t seed_flag, const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);
    std::ostringstream edges;
    std::vector<std::int64_t> degrees;

    if (model == "cm" || model == "um" || model == "ecm") {
        const DegreeSequence d = build_power_law_degrees(tau, n, cf, lambda);
        if (model == "cm") {
            const MultiGraph g = config_model(d, rng);
            write_edge_list(g, edges);
            degrees = g.degrees();
        } else if (model == "um") {
            const UniformSimpleResult r = uniform_simple(d, rng, 1000);
            if (!r.graph)
                throw std::runtime_error("uniform_simple: rejection budget exhausted after " +
                                         std::to_string(r.attempts) + " tries");
            write_edge_list(*r.graph, edges);
            degrees = r.graph->degrees();
        } else {
            const ErasedResult r = erased_config_model(d, rng);
            write_edge_list(r.graph, edges);
            degrees = r.graph.degrees();
        }
    } else if (model == "grg" || model == "cl" || model == "nr") {
        const WeightSequence w = power_law_weights(tau, n, cf);
        const Kernel k = model == "grg"  ? Kernel::GRG
                         : model == "cl" ? Kernel::ChungLu
                                         : Kernel::NorrosReittu;
        const SimpleGraph g = inhomogeneous_graph(w, k, rng);
        write_edge_list(g, edges);
        degrees = g.degrees();
    } else {
        throw UsageError("gen: unknown --model " + model);
    }

    write_text(out, edges.str());
    write_text(out + ".json", graph_json_sidecar(n, degrees, model));
    std::cout << "wrote " << out << " and " << out << ".json\n";
    return 0;
}

int cmd_percolate(const std::string& mode, double p, double lambda,
                  const std::string& regime, double tau, const std::string& in,
                  std::int64_t seed_flag, const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);

    double use_p = p;
    std::int64_t n_plus = 0;
    std::ostringstream edges;

    if (mode == "direct") {
        const SimpleGraph g = read_graph_file(in);
        if (use_p < 0.0) throw UsageError("percolate: direct mode needs --p");
        const PercolatedGraph pg = bond_percolate(g, use_p, rng);
        write_edge_list(pg.simple(), edges);
    } else if (mode == "janson" || mode == "fountoulakis" || mode == "sandwich") {
        const DegreeSequence d = read_degrees_file(in);
        if (use_p < 0.0) {
            if (regime.empty()) throw UsageError("percolate: need --p or --regime");
            const ScalingConstants scal = scaling_constants(tau, d.n());
            PercolationSpec spec;
            spec.regime = regime == "tau_gt4"      ? PercRegime::tau_gt4
                          : regime == "tau_34"     ? PercRegime::tau_34
                          : regime == "tau_23_CM"  ? PercRegime::tau_23_CM
                          : regime == "tau_23_single"
                              ? PercRegime::tau_23_single
                              : throw UsageError("percolate: unknown --regime " + regime);
            spec.lambda = lambda;
            use_p = critical_p(spec, criticality(d, scal, 1).nu_n, scal).p;
        }
        PercolatedGraph pg = mode == "janson" ? janson_percolate(d, use_p, rng)
                             : mode == "fountoulakis"
                                 ? fountoulakis_percolate(d, use_p, rng)
                                 : sandwich_graph(d, use_p, rng);
        n_plus = pg.n_plus;
        write_edge_list(pg.multi(), edges);
    } else {
        throw UsageError("percolate: unknown --mode " + mode);
    }

    write_text(out, edges.str());
    write_text(out + ".json", percolation_json_sidecar(use_p, mode, lambda, n_plus));
    std::cout << "wrote " << out << " (p=" << use_p << ")\n";
    return 0;
}

int cmd_explore(const std::string& mode, const std::string& in, std::int64_t seed_flag,
                const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);
    const DegreeSequence d = read_degrees_file(in);
    const ExploreResult res =
        mode == "unit" ? explore_unit(d, rng) : explore_dfs(d, rng);
    std::ostringstream csv;
    write_walk_csv(res.walk, csv);
    write_text(out, csv.str());
    const auto comps = components_from_walk(res.walk);
    std::cout << "components: " << comps.size() << ", stages: " << res.walk.stages()
              << '\n';
    return 0;
}

int cmd_stats(const std::string& in, const std::string& out) {
    const SimpleGraph g = read_graph_file(in);
    const auto comps = decompose(g);
    std::ostringstream csv;
    write_components_csv(comps, csv);
    write_text(out, csv.str());

    auto degs = g.degrees();
    std::sort(degs.begin(), degs.end(), std::greater<std::int64_t>());
    std::int64_t total = 0;
    for (auto v : degs) total += v;
    std::cout << "n=" << g.n << " edges=" << g.edge_count()
              << " components=" << comps.size() << " total_degree=" << total << '\n';
    return 0;
}

int cmd_limits(const std::string& mode, double mu, double eta, double lambda, double T,
               double dt, int K, double cf, double tau, std::int64_t seed_flag,
               const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);
    LimitPath path;
    if (mode == "bm") {
        path = simulate_bm_parabolic(mu, eta, lambda, T, dt, rng);
    } else if (mode == "thinned") {
        const double alpha = 1.0 / (tau - 1.0);
        const ThetaSequence th =
            ThetaSequence::power_law(cf, alpha, K, mu, ThetaClass::l3_not_l2);
        path = simulate_thinned_levy(th, lambda, T, dt, rng);
    } else if (mode == "isj") {
        const double alpha = 1.0 / (tau - 1.0);
        const ThetaSequence th =
            ThetaSequence::power_law(cf, alpha, K, mu, ThetaClass::l2_not_l1);
        path = simulate_isj(th, lambda, T, dt, rng);
    } else {
        throw UsageError("limits: unknown --mode " + mode);
    }
    std::ostringstream csv;
    write_path_csv(path, csv);
    write_text(out, csv.str());

    MarkedExcursions exc = excursions(path);
    exc.order_by_length();
    std::ostringstream ecsv;
    write_excursions_csv(exc, ecsv);
    write_text(out + ".exc.csv", ecsv.str());
    std::cout << "excursions: " << exc.excursions.size() << '\n';
    return 0;
}

int cmd_coalescent(const std::string& mode, std::int64_t n, double T,
                   std::int64_t seed_flag, const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);
    std::ostringstream csv;
    if (mode == "mc" || mode == "amc") {
        std::vector<double> x0(n, 1.0);
        const CoalTrajectory traj =
            mode == "mc" ? simulate_mc(x0, 1.0, T, rng)
                         : simulate_amc(x0, std::vector<std::int64_t>(n, 0), 1.0, 0.5, T, rng);
        write_events_csv(traj.events, csv);
    } else if (mode == "dynamic" || mode == "modified") {
        DegreeSequence d;
        d.degrees.assign(n, 2);
        d.recompute_total();
        if (mode == "dynamic") {
            const DynTrajectory traj = dynamic_construction(d, T, rng);
            write_events_csv(traj.events, csv);
        } else {
            const DynTrajectory traj = dynamic_construction(d, T / 2.0, rng);
            const ModifiedResult res = modified_process(traj.state, T, rng);
            write_events_csv(res.events, csv);
        }
    } else {
        throw UsageError("coalescent: unknown --mode " + mode);
    }
    write_text(out, csv.str());
    std::cout << "wrote " << out << '\n';
    return 0;
}

int cmd_limitgraph(int K, double lambda, const std::string& kernel, double tau,
                   double cf, double mu, std::int64_t seed_flag, const std::string& out) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    Rng rng = make_rng(seed);
    HubKernel hk;
    hk.kind = kernel == "ecm" ? HubKernel::ecm : HubKernel::grg;
    hk.alpha = 1.0 / (tau - 1.0);
    hk.mu = mu;
    hk.cF = cf;
    const LambdaMatrix lam = lambda_matrix(K, lambda, hk);
    std::ostringstream csv;
    csv << "i,j,lambda_ij\n";
    for (int i = 1; i <= K; ++i)
        for (int j = i + 1; j <= K; ++j) csv << i << ',' << j << ',' << lam.at(i, j) << '\n';
    write_text(out, csv.str());

    const TruncatedLimitGraph g = sample_g_infty(lam, rng);
    const auto weights = limit_weights(g, hub_theta(cf, hk.alpha, K));
    std::ostringstream wcsv;
    wcsv << "rank,W_infty\n";
    for (std::size_t i = 0; i < weights.size(); ++i)
        wcsv << i + 1 << ',' << weights[i] << '\n';
    write_text(out + ".winf.csv", wcsv.str());
    std::cout << "wrote " << out << " and " << out << ".winf.csv\n";
    return 0;
}

int cmd_experiment(const std::string& spec_path, int threads, std::int64_t seed_flag) {
    ExperimentSpec spec = ExperimentSpec::from_file(spec_path);
    if (seed_flag >= 0) spec.seed = static_cast<std::uint64_t>(seed_flag);
    std::cout << "seed: " << spec.seed << '\n';
    const RunResult result = run_experiment(spec, threads);
    write_run_result(spec, result);
    std::cout << "replicates: " << result.rows.size() << ", failures: " << result.failures
              << "\nwrote " << spec.out_dir << "/rows.csv and " << spec.out_dir
              << "/manifest.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical random graph simulation laboratory"};
    app.require_subcommand(1);

    std::string model = "cm", mode = "direct", regime, kernel = "grg";
    std::string in, out = "out.csv", spec_path;
    double tau = 3.5, cf = 1.0, lambda = 0.0, p = -1.0;
    double mu = 1.0, eta = 1.0, T = 10.0, dt = 1e-3;
    std::int64_t n = 1000;
    std::int64_t seed = -1;
    int threads = 1, K = 200, replicates = 1;

    auto* gen = app.add_subcommand("gen", "generate a random graph");
    gen->add_option("--model", model, "cm|um|ecm|grg|cl|nr");
    gen->add_option("--tau", tau, "power-law exponent");
    gen->add_option("--n", n, "vertex count");
    gen->add_option("--cf", cf, "tail constant cF");
    gen->add_option("--lambda", lambda, "critical window location");
    gen->add_option("--seed", seed, "master seed (omit for entropy)");
    gen->add_option("--out", out, "edge list output path")->required();

    auto* perc = app.add_subcommand("percolate", "percolate a graph or degree sequence");
    perc->add_option("--mode", mode, "direct|janson|fountoulakis|sandwich");
    perc->add_option("--p", p, "retention probability");
    perc->add_option("--lambda", lambda, "window location");
    perc->add_option("--regime", regime, "tau_gt4|tau_34|tau_23_CM|tau_23_single");
    perc->add_option("--tau", tau, "power-law exponent");
    perc->add_option("--in", in, "input file")->required();
    perc->add_option("--seed", seed, "master seed");
    perc->add_option("--out", out, "output edge list");

    auto* expl = app.add_subcommand("explore", "run an exploration walk");
    expl->add_option("--mode", mode, "dfs|unit");
    expl->add_option("--in", in, "degrees file")->required();
    expl->add_option("--seed", seed, "master seed");
    expl->add_option("--out", out, "walk CSV path");

    auto* stats = app.add_subcommand("stats", "component statistics of an edge list");
    stats->add_option("--in", in, "edge list")->required();
    stats->add_option("--out", out, "components CSV path");

    auto* limits = app.add_subcommand("limits", "simulate a limit process");
    limits->add_option("--mode", mode, "bm|thinned|isj");
    limits->add_option("--mu", mu, "mu parameter");
    limits->add_option("--eta", eta, "eta parameter (bm)");
    limits->add_option("--lambda", lambda, "drift location");
    limits->add_option("--T", T, "horizon");
    limits->add_option("--dt", dt, "grid step");
    limits->add_option("--K", K, "theta truncation");
    limits->add_option("--cf", cf, "theta tail constant");
    limits->add_option("--tau", tau, "power-law exponent for theta");
    limits->add_option("--seed", seed, "master seed");
    limits->add_option("--out", out, "path CSV");

    auto* coal = app.add_subcommand("coalescent", "simulate coalescent dynamics");
    coal->add_option("--mode", mode, "mc|amc|dynamic|modified");
    coal->add_option("--n", n, "particles / vertices");
    coal->add_option("--T", T, "horizon");
    coal->add_option("--seed", seed, "master seed");
    coal->add_option("--out", out, "events CSV");

    auto* lg = app.add_subcommand("limitgraph", "hub limit graph G_infinity(lambda)");
    lg->add_option("--K", K, "hub truncation");
    lg->add_option("--lambda", lambda, "window location (>0)");
    lg->add_option("--kernel", kernel, "grg|ecm");
    lg->add_option("--tau", tau, "power-law exponent");
    lg->add_option("--cf", cf, "cF");
    lg->add_option("--mu", mu, "mu");
    lg->add_option("--seed", seed, "master seed");
    lg->add_option("--out", out, "lambda matrix CSV");

    auto* exp = app.add_subcommand("experiment", "run a replicated experiment");
    exp->add_option("--spec", spec_path, "JSON or TOML experiment spec")->required();
    exp->add_option("--threads", threads, "replicate parallelism");
    exp->add_option("--replicates", replicates, "override (unused when 0)");
    exp->add_option("--seed", seed, "master seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(model, tau, n, cf, lambda, seed, out);
        if (perc->parsed()) return cmd_percolate(mode, p, lambda, regime, tau, in, seed, out);
        if (expl->parsed()) return cmd_explore(mode, in, seed, out);
        if (stats->parsed()) return cmd_stats(in, out);
        if (limits->parsed())
            return cmd_limits(mode, mu, eta, lambda, T, dt, K, cf, tau, seed, out);
        if (coal->parsed()) return cmd_coalescent(mode, n, T, seed, out);
        if (lg->parsed()) return cmd_limitgraph(K, lambda, kernel, tau, cf, mu, seed, out);
        if (exp->parsed()) return cmd_experiment(spec_path, threads, seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
