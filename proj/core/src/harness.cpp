#include "critlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "critlab/components.hpp"
#include "critlab/io.hpp"
#include "critlab/rng.hpp"

namespace critlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_array(const std::string& body) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) parts.push_back(trim(cur));
    return parts;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return s.substr(1, s.size() - 2);
    return s;
}

} // namespace

std::string ExperimentSpec::canonical_json() const {
    nlohmann::json j;
    j["model"] = model;
    j["tau"] = tau;
    j["cF"] = cF;
    j["lambda"] = lambda;
    j["p"] = p;
    j["regime"] = regime;
    j["n"] = n_grid;
    j["replicates"] = replicates;
    j["seed"] = seed;
    j["outputs"] = outputs;
    return j.dump();
}

std::uint64_t ExperimentSpec::hash() const {
    // FNV-1a over the canonical serialization
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : canonical_json()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentSpec s;
    if (j.contains("model")) s.model = j["model"].get<std::string>();
    if (j.contains("tau")) s.tau = j["tau"].get<double>();
    if (j.contains("cF")) s.cF = j["cF"].get<double>();
    if (j.contains("cf")) s.cF = j["cf"].get<double>();
    if (j.contains("lambda")) s.lambda = j["lambda"].get<double>();
    if (j.contains("p")) s.p = j["p"].get<double>();
    if (j.contains("regime")) s.regime = j["regime"].get<std::string>();
    if (j.contains("n")) s.n_grid = j["n"].get<std::vector<std::int64_t>>();
    if (j.contains("replicates")) s.replicates = j["replicates"].get<int>();
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("outputs")) s.outputs = j["outputs"].get<std::vector<std::string>>();
    if (j.contains("out_dir")) s.out_dir = j["out_dir"].get<std::string>();
    return s;
}

ExperimentSpec ExperimentSpec::from_toml(const std::string& text) {
    ExperimentSpec s;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue; // section headers ignored
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "model") s.model = unquote(val);
        else if (key == "tau") s.tau = std::stod(val);
        else if (key == "cF" || key == "cf") s.cF = std::stod(val);
        else if (key == "lambda") s.lambda = std::stod(val);
        else if (key == "p") s.p = std::stod(val);
        else if (key == "regime") s.regime = unquote(val);
        else if (key == "replicates") s.replicates = std::stoi(val);
        else if (key == "seed") s.seed = std::stoull(val);
        else if (key == "out_dir") s.out_dir = unquote(val);
        else if (key == "n") {
            if (val.size() < 2 || val.front() != '[')
                s.n_grid = {std::stoll(val)};
            else {
                s.n_grid.clear();
                for (const auto& part : split_array(val.substr(1, val.size() - 2)))
                    s.n_grid.push_back(std::stoll(part));
            }
        } else if (key == "outputs") {
            s.outputs.clear();
            if (val.size() >= 2 && val.front() == '[')
                for (const auto& part : split_array(val.substr(1, val.size() - 2)))
                    s.outputs.push_back(unquote(part));
            else
                s.outputs.push_back(unquote(val));
        }
    }
    return s;
}

ExperimentSpec ExperimentSpec::from_file(const std::string& path) {
    const std::string text = read_file(path);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return from_json(text);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".toml")
        return from_toml(text);
    // sniff: JSON starts with '{'
    for (char c : text) {
        if (c == '{') return from_json(text);
        if (!std::isspace(static_cast<unsigned char>(c))) break;
    }
    return from_toml(text);
}

namespace {

bool wants(const ExperimentSpec& spec, const std::string& what) {
    return std::find(spec.outputs.begin(), spec.outputs.end(), what) != spec.outputs.end();
}

ReplicateRow one_replicate(const ExperimentSpec& spec, std::int64_t n, int rep,
                           std::uint64_t stream) {
    ReplicateRow row;
    row.n = n;
    row.replicate = rep;
    Rng rng = make_rng(spec.seed, stream);

    const bool percolated = spec.model.size() > 5 &&
                            spec.model.substr(spec.model.size() - 5) == "_perc";
    const std::string base = percolated ? spec.model.substr(0, spec.model.size() - 5)
                                        : spec.model;

    const ScalingConstants scal = scaling_constants(spec.tau, n);
    DecomposeOptions opts;
    opts.isolated_zero = scal.tau_in_23();
    opts.with_diameter = wants(spec, "diameter");

    double perc_p = spec.p;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::int64_t graph_n = n;
    WeightSequence weights;
    const WeightSequence* wptr = nullptr;

    if (base == "cm" || base == "um" || base == "ecm") {
        const DegreeSequence d = build_power_law_degrees(spec.tau, n, spec.cF, 0.0);
        if (percolated && perc_p < 0.0) {
            PercolationSpec pspec;
            pspec.regime = spec.regime == "tau_gt4"      ? PercRegime::tau_gt4
                           : spec.regime == "tau_34"     ? PercRegime::tau_34
                           : spec.regime == "tau_23_CM"  ? PercRegime::tau_23_CM
                                                         : PercRegime::tau_23_single;
            pspec.lambda = spec.lambda;
            perc_p = critical_p(pspec, criticality(d, scal, 1).nu_n, scal).p;
        }
        if (base == "cm") {
            if (percolated) {
                const PercolatedGraph pg = fountoulakis_percolate(d, perc_p, rng);
                pg.multi().for_each_edge([&](Vertex u, Vertex v) { edges.emplace_back(u, v); });
            } else {
                const MultiGraph g = config_model(d, rng);
                g.for_each_edge([&](Vertex u, Vertex v) { edges.emplace_back(u, v); });
            }
        } else if (base == "ecm") {
            const ErasedResult er = erased_config_model(d, rng);
            SimpleGraph g = er.graph;
            if (percolated) {
                Rng prng = make_rng(spec.seed ^ 0x5bd1e995u, stream);
                const PercolatedGraph pg = bond_percolate(g, perc_p, prng);
                g = pg.simple();
            }
            edges = g.edges;
        } else { // um
            const UniformSimpleResult ur = uniform_simple(d, rng, 1000);
            if (!ur.graph) {
                row.failed = true;
                return row;
            }
            edges = ur.graph->edges;
        }
    } else if (base == "grg") {
        weights = power_law_weights(spec.tau, n, spec.cF);
        wptr = &weights;
        if (percolated && perc_p < 0.0) {
            PercolationSpec pspec;
            pspec.regime = PercRegime::tau_23_single;
            pspec.lambda = spec.lambda;
            perc_p = critical_p(pspec, 0.0, scal).p;
        }
        // independent thinning of independent edges: sample the product kernel
        const SimpleGraph g =
            inhomogeneous_graph(weights, Kernel::GRG, rng, 0.0, percolated ? perc_p : 1.0);
        edges = g.edges;
    } else {
        throw std::invalid_argument("run_experiment: unknown model " + spec.model);
    }

    const auto comps = decompose_edges(graph_n, edges, wptr, opts);
    row.components = static_cast<std::int64_t>(comps.size());
    if (!comps.empty()) {
        row.c1_size = comps[0].size;
        row.c1_edges = comps[0].edges;
        row.c1_surplus = comps[0].surplus;
        row.c1_diameter = comps[0].diameter;
        row.c1_weight = comps[0].weight;
        if (comps.size() > 1) row.c2_size = comps[1].size;
    }
    if (wants(spec, "susceptibilities")) {
        double s2 = 0.0;
        for (const auto& c : comps) s2 += static_cast<double>(c.size) * static_cast<double>(c.size);
        row.s2_star = s2 / static_cast<double>(graph_n);
        for (const auto& c : comps) row.delta_max = std::max(row.delta_max, c.diameter);
    }
    return row;
}

} // namespace

RunResult run_experiment(const ExperimentSpec& spec, int threads) {
    if (spec.replicates < 1)
        throw std::invalid_argument("run_experiment: replicates must be >= 1");
    RunResult result;
    result.spec_hash = spec.hash();
    const std::size_t total = spec.n_grid.size() * static_cast<std::size_t>(spec.replicates);
    result.rows.resize(total);

    std::vector<char> failed(total, 0);
    for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::int64_t n = spec.n_grid[ni];
        const int R = spec.replicates;

        auto work = [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                const std::size_t slot = ni * R + r;
                const std::uint64_t stream = static_cast<std::uint64_t>(slot);
                try {
                    result.rows[slot] = one_replicate(spec, n, r, stream);
                } catch (const std::exception&) {
                    result.rows[slot].n = n;
                    result.rows[slot].replicate = r;
                    result.rows[slot].failed = true;
                }
                if (result.rows[slot].failed) failed[slot] = 1;
            }
        };
        const int T = std::max(1, threads);
        if (T == 1) {
            work(0, R);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (R + T - 1) / T;
            for (int t = 0; t < T; ++t) {
                const int lo = t * chunk, hi = std::min(R, (t + 1) * chunk);
                if (lo < hi) pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        const auto t1 = std::chrono::steady_clock::now();
        result.durations_sec.push_back(std::chrono::duration<double>(t1 - t0).count());

        std::vector<double> c1;
        for (int r = 0; r < R; ++r) {
            const auto& row = result.rows[ni * R + r];
            if (!row.failed) c1.push_back(static_cast<double>(row.c1_size));
        }
        if (!c1.empty()) {
            result.summary[std::to_string(n) + "/median_c1"] = median(c1);
            result.summary[std::to_string(n) + "/mean_c1"] = mean_se(c1).mean;
        }
    }
    for (char f : failed) result.failures += f;
    return result;
}

std::string run_rows_csv(const RunResult& result) {
    std::ostringstream out;
    out << "n,replicate,failed,components,c1_size,c2_size,c1_edges,c1_surplus,"
           "c1_diameter,c1_weight,s2_star,delta_max\n";
    for (const auto& r : result.rows) {
        out << r.n << ',' << r.replicate << ',' << (r.failed ? 1 : 0) << ','
            << r.components << ',' << r.c1_size << ',' << r.c2_size << ',' << r.c1_edges
            << ',' << r.c1_surplus << ',' << r.c1_diameter << ',' << r.c1_weight << ','
            << r.s2_star << ',' << r.delta_max << '\n';
    }
    return out.str();
}

namespace {

std::string git_describe() {
    FILE* pipe = ::popen("git describe --always --dirty 2>/dev/null", "r");
    if (!pipe) return "unknown";
    char buf[128];
    std::string out;
    while (fgets(buf, sizeof(buf), pipe)) out += buf;
    ::pclose(pipe);
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out.empty() ? "unknown" : out;
}

} // namespace

std::string run_manifest_json(const ExperimentSpec& spec, const RunResult& result) {
    nlohmann::json j;
    j["spec"] = nlohmann::json::parse(spec.canonical_json());
    j["seed"] = spec.seed;
    j["spec_hash"] = result.spec_hash;
    j["git_describe"] = git_describe();
    j["failures"] = result.failures;
    j["durations_sec"] = result.durations_sec;
    j["summary"] = result.summary;
    return j.dump(2);
}

void write_run_result(const ExperimentSpec& spec, const RunResult& result) {
    atomic_write_file(spec.out_dir + "/rows.csv", run_rows_csv(result));
    atomic_write_file(spec.out_dir + "/manifest.json", run_manifest_json(spec, result));
}

CompareReport compare_laws(const std::vector<double>& a, const std::vector<double>& b,
                           CompareMethod method, double level) {
    if (a.size() < 100 || b.size() < 100)
        throw std::invalid_argument("compare_laws: samples must have >= 100 points");
    {
        // degenerate samples carry no comparable law
        const auto degenerate = [](const std::vector<double>& v) {
            for (double x : v)
                if (x != v.front()) return false;
            return true;
        };
        if (degenerate(a) && degenerate(b) && a.front() != b.front())
            throw std::invalid_argument("compare_laws: both samples are degenerate");
    }
    CompareReport rep;
    rep.method = method;
    rep.level = level;
    rep.n_a = static_cast<std::int64_t>(a.size());
    rep.n_b = static_cast<std::int64_t>(b.size());
    switch (method) {
        case CompareMethod::ks: {
            rep.statistic = ks_statistic(a, b);
            rep.threshold = ks_critical(level, rep.n_a, rep.n_b);
            rep.reject = rep.statistic > rep.threshold;
            break;
        }
        case CompareMethod::tv_binned: {
            const int bins =
                std::max(4, static_cast<int>(std::sqrt(static_cast<double>(
                                 std::min(a.size(), b.size())))));
            rep.statistic = tv_binned(a, b, bins);
            // 3-sigma multinomial fluctuation scale under equality
            rep.threshold = 3.0 * 0.5 *
                            std::sqrt(static_cast<double>(bins)) *
                            (1.0 / std::sqrt(static_cast<double>(rep.n_a)) +
                             1.0 / std::sqrt(static_cast<double>(rep.n_b)));
            rep.reject = rep.statistic > rep.threshold;
            break;
        }
        case CompareMethod::chi2: {
            // equal-probability bins from the first sample's quantiles
            const int bins =
                std::max(4, static_cast<int>(std::sqrt(static_cast<double>(
                                 std::min(a.size(), b.size())) / 4.0)));
            std::vector<double> edges(bins - 1);
            for (int k = 1; k < bins; ++k)
                edges[k - 1] = quantile(a, static_cast<double>(k) / bins);
            auto bin_of = [&](double v) {
                return static_cast<int>(
                    std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
            };
            std::vector<double> ca(bins, 0.0), cb(bins, 0.0);
            for (double v : a) ca[bin_of(v)] += 1.0;
            for (double v : b) cb[bin_of(v)] += 1.0;
            double stat = 0.0;
            int dof = -1;
            const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
            for (int k = 0; k < bins; ++k) {
                const double tot = ca[k] + cb[k];
                if (tot <= 0.0) continue;
                const double ea = tot * na / (na + nb);
                const double eb = tot * nb / (na + nb);
                stat += (ca[k] - ea) * (ca[k] - ea) / ea + (cb[k] - eb) * (cb[k] - eb) / eb;
                ++dof;
            }
            rep.statistic = stat;
            rep.threshold = chi2_critical(level, std::max(1, dof));
            rep.reject = rep.statistic > rep.threshold;
            break;
        }
    }
    return rep;
}

RegressionResult scaling_regression(const std::vector<double>& n_values,
                                    const std::vector<double>& medians) {
    if (n_values.size() != medians.size() || n_values.size() < 2)
        throw std::invalid_argument("scaling_regression: need >= 2 matched points");
    const std::size_t k = n_values.size();
    std::vector<double> x(k), y(k);
    for (std::size_t i = 0; i < k; ++i) {
        x[i] = std::log(n_values[i]);
        y[i] = std::log(medians[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    RegressionResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    if (k > 2) {
        double ss = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double resid = y[i] - r.intercept - r.slope * x[i];
            ss += resid * resid;
        }
        r.slope_se = std::sqrt(ss / static_cast<double>(k - 2) / sxx);
    }
    return r;
}

TwoHopResult two_hop_check(const WeightSequence& w, double p, double lambda,
                           double alpha, int i_max, int j_max,
                           bool include_endpoints) {
    const std::int64_t n = w.n();
    const double ell = w.total;
    TwoHopResult res;
    res.i_max = i_max;
    res.j_max = j_max;
    res.p2.assign(static_cast<std::size_t>(i_max) * j_max, 0.0);
    double fitted = 0.0;
    for (int i = 1; i <= i_max; ++i) {
        for (int j = 1; j <= j_max; ++j) {
            if (i == j) continue;
            double sum = 0.0;
            const double wi = w.weights[i - 1], wj = w.weights[j - 1];
            for (std::int64_t v = 0; v < n; ++v) {
                if (!include_endpoints && (v == i - 1 || v == j - 1)) continue;
                const double wv = w.weights[v];
                sum += wi * wv * wv * wj / ((ell + wi * wv) * (ell + wj * wv));
            }
            const double pij2 = p * p * sum;
            res.p2[(i - 1) * j_max + (j - 1)] = pij2;
            res.max_p2 = std::max(res.max_p2, pij2);
            const double bound =
                lambda * lambda * std::pow(static_cast<double>(std::min(i, j)), -(1.0 - alpha)) *
                std::pow(static_cast<double>(std::max(i, j)), -alpha);
            fitted = std::max(fitted, pij2 / bound);
        }
    }
    res.fitted_C = fitted;
    // recheck with the fitted constant (guards the arithmetic above)
    const double C = fitted * (1.0 + 1e-12);
    for (int i = 1; i <= i_max; ++i)
        for (int j = 1; j <= j_max; ++j) {
            if (i == j) continue;
            const double bound =
                C * lambda * lambda *
                std::pow(static_cast<double>(std::min(i, j)), -(1.0 - alpha)) *
                std::pow(static_cast<double>(std::max(i, j)), -alpha);
            if (res.p2[(i - 1) * j_max + (j - 1)] > bound) ++res.violations;
        }
    return res;
}

double kappa_estimate(const DegreeSequence& d, double p, double t, double tau) {
    const double scale = t * std::pow(p, 1.0 / (3.0 - tau));
    double laplace = 0.0;
    for (std::int64_t v : d.degrees)
        laplace += static_cast<double>(v) * std::exp(-scale * static_cast<double>(v));
    laplace /= static_cast<double>(d.total);
    return (1.0 - laplace) /
           (std::pow(p, (tau - 2.0) / (3.0 - tau)) * std::pow(t, tau - 2.0));
}

NearCriticalReport near_critical_report(double tau, std::int64_t n, double cF,
                                        double lambda, NearCriticalRegime regime,
                                        int replicates, std::uint64_t seed) {
    const ScalingConstants scal = scaling_constants(tau, n);
    const DegreeSequence d = build_power_law_degrees(tau, n, cF, 0.0);
    const CriticalityReport rep = criticality(d, scal, 1);
    PercolationSpec pspec;
    pspec.regime = PercRegime::tau_23_CM;
    pspec.lambda = lambda;
    const double pc = critical_p(pspec, rep.nu_n, scal).p;
    const double logn = std::log(static_cast<double>(n));

    NearCriticalReport out;
    out.p_n = regime == NearCriticalRegime::barely_subcritical ? pc / logn
                                                               : std::min(1.0, pc * logn);
    // the window requires log(n)/ell_n << p_n << p_c (subcritical side)
    out.window_ok = out.p_n > 10.0 * logn / static_cast<double>(d.total);
    out.theta1 = rep.theta_hat.empty() ? 0.0 : rep.theta_hat[0];

    std::vector<double> ratios, edge_ratios;
    DecomposeOptions opts;
    opts.isolated_zero = true;
    opts.with_diameter = false;
    for (int r = 0; r < replicates; ++r) {
        Rng rng = make_rng(seed, r);
        const PercolatedGraph pg = fountoulakis_percolate(d, out.p_n, rng);
        const auto comps = decompose(pg.multi(), nullptr, opts);
        if (comps.empty()) continue;
        const double scale = std::pow(static_cast<double>(n), scal.alpha) * out.p_n;
        ratios.push_back(static_cast<double>(comps[0].size) / scale);
        if (comps[0].size > 0)
            edge_ratios.push_back(static_cast<double>(comps[0].edges) /
                                  static_cast<double>(comps[0].size));
    }
    if (!ratios.empty()) out.median_c1_over_scale = median(ratios);
    if (!edge_ratios.empty()) out.edges_over_size = median(edge_ratios);
    out.kappa_t1 = kappa_estimate(d, out.p_n, 1.0, tau);
    out.kappa_t2 = kappa_estimate(d, out.p_n, 2.0, tau);
    return out;
}

} // namespace critlab
