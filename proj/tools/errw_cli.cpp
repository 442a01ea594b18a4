// Command-line front end: simulation, density evaluation, samplers, model
// comparison, tree equivalence checks, and strip/plane experiments. Every
// subcommand prints a JSON summary on stdout; CSV artifacts go to the paths
// given by flags, resolved against --output-dir (or ERRW_OUTPUT_DIR).
//
// Exit codes: 0 success, 2 usage error, 3 domain/precondition error,
// 4 numerical-degeneracy warning escalated by --strict.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "errw/errw.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    bool strict = false;
    std::string output_dir;
    std::string config_path;
};

struct GraphOptions {
    std::string builtin;
    std::string file;
    std::string a; // scalar initial weight as a rational string
};

errw::LoadedGraph resolve_graph(const GraphOptions& opt) {
    if (!opt.file.empty()) return errw::load_edge_list_file(opt.file);
    if (!opt.builtin.empty())
        return errw::LoadedGraph{errw::builtin_graph(opt.builtin), {}, false};
    throw errw::domain_error("no graph given (use --graph or --graph-file)");
}

errw::InitialWeights resolve_weights(const errw::LoadedGraph& lg, const std::string& a_flag) {
    if (!a_flag.empty() && lg.has_weights)
        throw errw::domain_error("initial weights given twice (edge-list column and --a)");
    if (lg.has_weights) return errw::InitialWeights::from(lg.weights);
    errw::Rational a = a_flag.empty() ? errw::Rational(1) : errw::parse_rational(a_flag);
    return errw::InitialWeights::uniform(lg.graph, a);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

errw::Trajectory parse_path(const errw::Graph& g, const std::string& names) {
    errw::Trajectory traj;
    for (const std::string& n : split_commas(names))
        traj.vertices.push_back(g.require_vertex(n));
    if (traj.vertices.empty()) throw errw::domain_error("empty path");
    return traj;
}

errw::Trajectory load_sequence(const errw::Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw errw::domain_error("cannot open sequence file: " + path);
    errw::Trajectory traj;
    std::string tok;
    while (in >> tok) traj.vertices.push_back(g.require_vertex(tok));
    if (traj.vertices.empty()) throw errw::domain_error("sequence file is empty: " + path);
    return traj;
}

std::string resolve_output(const GlobalOptions& global, const std::string& p) {
    fs::path out(p);
    if (!out.is_absolute() && !global.output_dir.empty()) out = fs::path(global.output_dir) / out;
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    return out.string();
}

// Inserts a seed marker before the extension when one run among several
// needs its own file.
std::string seed_variant(const std::string& path, std::uint64_t seed, bool multi) {
    if (!multi) return path;
    fs::path p(path);
    fs::path stem = p.stem();
    stem += "_seed" + std::to_string(seed);
    stem += p.extension();
    return (p.parent_path() / stem).string();
}

json graph_summary(const errw::Graph& g) {
    return json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
}

json rational_list(const std::vector<errw::Rational>& v) {
    json out = json::array();
    for (const errw::Rational& r : v) out.push_back(errw::to_string(r));
    return out;
}

json name_list(const errw::Graph& g, const errw::Trajectory& traj) {
    json out = json::array();
    for (errw::VertexId v : traj.vertices) out.push_back(g.vertex_name(v));
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    GraphOptions graph;
    std::string v0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::string traj_csv, stats_csv;
};

json run_simulate(const SimulateOptions& opt, const GlobalOptions& global,
                  std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    if (opt.steps < 1) throw errw::domain_error("simulate: need --steps >= 1");
    errw::VertexId v0 =
        opt.v0.empty() ? errw::VertexId{0} : lg.graph.require_vertex(opt.v0);
    errw::RandomSource rng(opt.seed);
    errw::WalkState state(lg.graph, v0, a);
    errw::Trajectory traj;
    state.run(opt.steps, rng, &traj);

    errw::SimplexWeights alpha = errw::occupation_fractions(lg.graph, traj);
    errw::ChainVectors chain = errw::chain_vector(lg.graph, traj);
    std::vector<std::uint64_t> counts = errw::edge_crossing_counts(lg.graph, traj);

    json outputs = json::object();
    if (!opt.traj_csv.empty()) {
        std::string p = resolve_output(global, opt.traj_csv);
        errw::write_trajectory_csv(p, lg.graph, traj);
        outputs["trajectory_csv"] = p;
    }
    if (!opt.stats_csv.empty()) {
        std::string p = resolve_output(global, opt.stats_csv);
        errw::write_edge_stats_csv(p, lg.graph, traj);
        outputs["stats_csv"] = p;
    }

    return json{{"command", "simulate"},
                {"graph", graph_summary(lg.graph)},
                {"v0", lg.graph.vertex_name(v0)},
                {"a", rational_list(a.edge)},
                {"steps", opt.steps},
                {"seed", opt.seed},
                {"final_vertex", lg.graph.vertex_name(traj.current())},
                {"returns_to_start", errw::return_count(traj, v0)},
                {"edge_counts", counts},
                {"alpha", alpha.x},
                {"chain",
                 json{{"path_current", chain.path_current}, {"rescaled", chain.rescaled}}},
                {"outputs", outputs}};
}

// ------------------------------------------------------------ density-eval

struct DensityEvalOptions {
    GraphOptions graph;
    std::string v0;
    std::string x;
};

json run_density_eval(const DensityEvalOptions& opt, const GlobalOptions&,
                      std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    errw::VertexId v0 =
        opt.v0.empty() ? errw::VertexId{0} : lg.graph.require_vertex(opt.v0);
    std::vector<double> xs;
    for (const std::string& tok : split_commas(opt.x))
        xs.push_back(errw::to_double(errw::parse_rational(tok)));
    if (xs.size() != lg.graph.edge_count())
        throw errw::domain_error("density-eval: --x needs one value per edge");
    errw::SimplexWeights x = errw::SimplexWeights::normalized_point(std::move(xs));
    errw::DensityContext ctx = errw::make_density_context(lg.graph, v0, std::move(a));
    double det_form = errw::log_occupation_density_det(ctx, x);
    double tree_form = errw::log_occupation_density_tree(ctx, x);
    return json{{"command", "density-eval"},
                {"graph", graph_summary(lg.graph)},
                {"v0", lg.graph.vertex_name(v0)},
                {"a", rational_list(ctx.a.edge)},
                {"x", x.x},
                {"log_phi_det", det_form},
                {"log_phi_tree", tree_form},
                {"difference", det_form - tree_form},
                {"det_quadratic_form",
                 errw::det_quadratic_form(lg.graph, std::span<const double>(x.x))},
                {"spanning_tree_polynomial",
                 errw::spanning_tree_polynomial(lg.graph, std::span<const double>(x.x))}};
}

// -------------------------------------------------------------- sample-env

struct SampleEnvOptions {
    GraphOptions graph;
    std::string v0;
    std::uint64_t samples = 10000;
    std::uint64_t burn_in = 2000;
    std::uint64_t thin = 1;
    std::uint64_t seed = 0;
    std::string csv;
};

json run_sample_env(const SampleEnvOptions& opt, const GlobalOptions& global,
                    std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    errw::VertexId v0 =
        opt.v0.empty() ? errw::VertexId{0} : lg.graph.require_vertex(opt.v0);
    errw::DensityContext ctx = errw::make_density_context(lg.graph, v0, std::move(a));
    errw::McmcOptions mc;
    mc.samples = opt.samples;
    mc.burn_in = opt.burn_in;
    mc.thin = opt.thin;
    errw::RandomSource rng(opt.seed);
    errw::EnvironmentSample sample = errw::sample_occupation_density(ctx, mc, rng);
    errw::EdgeMoments moments = errw::sample_edge_moments(sample);

    std::vector<double> ess(lg.graph.edge_count());
    std::vector<double> coord(sample.states.size());
    for (std::size_t e = 0; e < ess.size(); ++e) {
        for (std::size_t i = 0; i < sample.states.size(); ++i)
            coord[i] = sample.states[i].x[e];
        ess[e] = errw::effective_sample_size(coord);
    }

    json outputs = json::object();
    if (!opt.csv.empty()) {
        std::string p = resolve_output(global, opt.csv);
        errw::write_environment_csv(p, sample);
        outputs["environment_csv"] = p;
    }
    return json{{"command", "sample-env"},
                {"graph", graph_summary(lg.graph)},
                {"v0", lg.graph.vertex_name(v0)},
                {"a", rational_list(ctx.a.edge)},
                {"samples", opt.samples},
                {"burn_in", opt.burn_in},
                {"thin", opt.thin},
                {"seed", opt.seed},
                {"acceptance_rate", sample.acceptance_rate},
                {"step_scale", sample.step_scale},
                {"mean", moments.mean},
                {"standard_error", moments.standard_error},
                {"effective_sample_size", ess},
                {"outputs", outputs}};
}

// ----------------------------------------------------------- mixture-check

struct MixtureCheckOptions {
    GraphOptions graph;
    std::string v0;
    std::string path;
    std::uint64_t samples = 100000;
    std::uint64_t burn_in = 5000;
    std::uint64_t thin = 1;
    std::uint64_t seed = 0;
};

json run_mixture_check(const MixtureCheckOptions& opt, const GlobalOptions&,
                       std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    errw::Trajectory traj = parse_path(lg.graph, opt.path);
    errw::VertexId v0 = opt.v0.empty() ? traj.start() : lg.graph.require_vertex(opt.v0);
    if (v0 != traj.start())
        throw errw::domain_error("mixture-check: path must start at --v0");
    errw::Rational exact = errw::path_probability_closed_form(lg.graph, a, traj);
    errw::DensityContext ctx = errw::make_density_context(lg.graph, v0, std::move(a));
    errw::McmcOptions mc;
    mc.samples = opt.samples;
    mc.burn_in = opt.burn_in;
    mc.thin = opt.thin;
    errw::RandomSource rng(opt.seed);
    errw::EnvironmentSample sample = errw::sample_occupation_density(ctx, mc, rng);
    errw::MixtureEstimate est = errw::mixture_path_probability(lg.graph, sample, traj);
    double exact_value = errw::to_double(exact);
    double z = est.standard_error > 0
                   ? (est.estimate - exact_value) / est.standard_error
                   : 0.0;
    return json{{"command", "mixture-check"},
                {"graph", graph_summary(lg.graph)},
                {"v0", lg.graph.vertex_name(v0)},
                {"a", rational_list(ctx.a.edge)},
                {"path", name_list(lg.graph, traj)},
                {"exact", errw::to_string(exact)},
                {"exact_value", exact_value},
                {"estimate", est.estimate},
                {"standard_error", est.standard_error},
                {"z_score", z},
                {"sample_count", est.sample_count},
                {"sampler", json{{"acceptance_rate", sample.acceptance_rate},
                                 {"step_scale", sample.step_scale},
                                 {"burn_in", opt.burn_in},
                                 {"thin", opt.thin},
                                 {"seed", opt.seed}}}};
}

// ------------------------------------------------------------------- bayes

struct BayesOptions {
    GraphOptions graph;
    std::string v0;
    std::string path;
    std::string data_file;
    std::string iid_dirichlet = "1";
    std::string row_dirichlet = "1";
};

json run_bayes(const BayesOptions& opt, const GlobalOptions&, std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    if (opt.path.empty() == opt.data_file.empty())
        throw errw::domain_error("bayes: give exactly one of --path or --data");
    errw::Trajectory data = opt.path.empty() ? load_sequence(lg.graph, opt.data_file)
                                             : parse_path(lg.graph, opt.path);
    errw::VertexId v0 = opt.v0.empty() ? data.start() : lg.graph.require_vertex(opt.v0);
    errw::PriorParams prior = errw::make_prior(lg.graph, v0, std::move(a));

    errw::Rational iid_param = errw::parse_rational(opt.iid_dirichlet);
    std::vector<errw::Rational> iid_params(lg.graph.vertex_count(), iid_param);
    errw::Rational row_param = errw::parse_rational(opt.row_dirichlet);

    double log_rev = errw::log_marginal_likelihood(prior, data);
    double log_iid = errw::log_iid_marginal_likelihood(lg.graph, iid_params, data);
    double log_full = errw::log_full_markov_marginal_likelihood(lg.graph, row_param, data);
    errw::PriorParams post = errw::posterior_update(prior, data);

    json out{{"command", "bayes"},
             {"graph", graph_summary(lg.graph)},
             {"v0", lg.graph.vertex_name(v0)},
             {"a", rational_list(prior.a.edge)},
             {"length", data.length()},
             {"iid_dirichlet", errw::to_string(iid_param)},
             {"row_dirichlet", errw::to_string(row_param)},
             {"log_ml_reversible", log_rev},
             {"log_ml_iid", log_iid},
             {"log_ml_full_markov", log_full},
             {"bayes_factor_iid_vs_reversible", errw::bayes_factor(log_iid, log_rev)},
             {"bayes_factor_reversible_vs_full", errw::bayes_factor(log_rev, log_full)},
             {"posterior", json{{"v0", lg.graph.vertex_name(post.v0)},
                                {"a", rational_list(post.a.edge)}}}};
    if (data.length() <= 64) {
        out["exact"] =
            json{{"ml_reversible", errw::to_string(errw::marginal_likelihood(prior, data))},
                 {"ml_iid",
                  errw::to_string(errw::iid_marginal_likelihood(lg.graph, iid_params, data))},
                 {"ml_full_markov", errw::to_string(errw::full_markov_marginal_likelihood(
                                        lg.graph, row_param, data))}};
    }
    return out;
}

// -------------------------------------------------------------- tree-check

struct TreeCheckOptions {
    GraphOptions graph;
    std::string v0;
    std::string path;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
};

json run_tree_check(const TreeCheckOptions& opt, const GlobalOptions&,
                    std::vector<std::string>&) {
    errw::LoadedGraph lg = resolve_graph(opt.graph);
    errw::InitialWeights a = resolve_weights(lg, opt.graph.a);
    errw::VertexId v0 =
        opt.v0.empty() ? errw::VertexId{0} : lg.graph.require_vertex(opt.v0);
    errw::Trajectory traj;
    bool sampled = false;
    if (!opt.path.empty()) {
        traj = parse_path(lg.graph, opt.path);
        if (traj.start() != v0) throw errw::domain_error("tree-check: path must start at --v0");
    } else {
        if (opt.steps < 1)
            throw errw::domain_error("tree-check: give --path, or --steps with --seed");
        errw::UrnState urns = errw::urn_init(lg.graph, v0, a);
        errw::RandomSource rng(opt.seed);
        traj = errw::simulate_via_urns(urns, v0, opt.steps, rng);
        sampled = true;
    }
    errw::Rational p_errw = errw::path_probability(lg.graph, a, traj);
    errw::Rational p_urn = errw::urn_path_probability(lg.graph, v0, a, traj);
    errw::Rational p_env = errw::rwre_path_probability(lg.graph, v0, a, traj);
    json out{{"command", "tree-check"},
             {"graph", graph_summary(lg.graph)},
             {"v0", lg.graph.vertex_name(v0)},
             {"a", rational_list(a.edge)},
             {"path", name_list(lg.graph, traj)},
             {"errw", errw::to_string(p_errw)},
             {"urn", errw::to_string(p_urn)},
             {"dirichlet_env", errw::to_string(p_env)},
             {"equal", p_errw == p_urn && p_urn == p_env},
             {"sampled", sampled}};
    if (sampled) out["seed"] = opt.seed;
    return out;
}

// ------------------------------------------------------------------ ladder

struct LadderOptions {
    int width = 0;
    std::string fiber_file;
    std::string a = "1";
    std::uint64_t steps = 0;
    std::vector<std::uint64_t> seeds;
    unsigned jobs = 1;
    std::string heatmap_csv, range_csv;
};

json ladder_run_json(const errw::LadderStats& stats, std::uint64_t seed,
                     std::vector<std::string>& warnings) {
    json checkpoints = json::array();
    for (const errw::LadderCheckpoint& cp : stats.checkpoints)
        checkpoints.push_back(json{{"t", cp.t},
                                   {"max_distance", cp.max_distance},
                                   {"returns", cp.returns},
                                   {"displacement", cp.displacement}});
    json run{{"seed", seed},
             {"returns", stats.returns_total},
             {"max_distance", stats.max_distance},
             {"crossed_edges", std::count_if(stats.counts.begin(), stats.counts.end(),
                                             [](std::uint64_t c) { return c > 0; })},
             {"checkpoints", checkpoints},
             {"outputs", json::object()}};
    try {
        errw::DecayFit fit = errw::decay_fit(stats);
        run["decay"] =
            json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"levels", fit.levels}};
    } catch (const errw::degenerate_fit_error& e) {
        run["decay"] = nullptr;
        warnings.push_back(std::string(e.what()) + " (seed " + std::to_string(seed) + ")");
    }
    errw::TailProfile tail = errw::tail_profile(stats);
    run["tail"] = json{{"slope", tail.slope}, {"valid", tail.slope_valid}};
    if (!tail.slope_valid)
        warnings.push_back("tail fit degenerate (seed " + std::to_string(seed) + ")");
    errw::RangeTrace range = errw::range_trace(stats);
    run["range"] =
        json{{"slope", range.slope}, {"intercept", range.intercept}, {"valid", range.fit_valid}};
    if (!range.fit_valid)
        warnings.push_back("range fit degenerate (seed " + std::to_string(seed) + ")");
    return run;
}

json run_ladder(const LadderOptions& opt, const GlobalOptions& global,
                std::vector<std::string>& warnings) {
    if ((opt.width > 0) == !opt.fiber_file.empty())
        throw errw::domain_error("ladder: give exactly one of --d or --fiber-file");
    if (opt.steps < 1) throw errw::domain_error("ladder: need --steps >= 1");
    if (opt.seeds.empty()) throw errw::domain_error("ladder: need --seeds");
    double a = errw::to_double(errw::parse_rational(opt.a));

    std::optional<errw::Graph> fiber_graph;
    if (!opt.fiber_file.empty()) fiber_graph = errw::load_edge_list_file(opt.fiber_file).graph;

    const bool multi = opt.seeds.size() > 1;
    struct PerSeed {
        json run;
        std::vector<std::string> warnings;
    };
    std::vector<PerSeed> results(opt.seeds.size());
    std::atomic<std::size_t> next{0};
    unsigned jobs = std::max(1u, opt.jobs);
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= opt.seeds.size()) break;
            std::uint64_t seed = opt.seeds[i];
            errw::LazyLattice lattice = fiber_graph
                                            ? errw::LazyLattice::tree_fiber(*fiber_graph)
                                            : errw::LazyLattice::strip(opt.width);
            errw::RandomSource rng(seed);
            errw::LadderStats stats = errw::long_run(lattice, a, opt.steps, rng);
            results[i].run = ladder_run_json(stats, seed, results[i].warnings);
            if (!opt.heatmap_csv.empty()) {
                std::string p = resolve_output(
                    global, seed_variant(opt.heatmap_csv, seed, multi));
                errw::write_heatmap_csv(p, stats);
                results[i].run["outputs"]["heatmap_csv"] = p;
            }
            if (!opt.range_csv.empty()) {
                std::string p =
                    resolve_output(global, seed_variant(opt.range_csv, seed, multi));
                errw::write_range_csv(p, errw::range_trace(stats));
                results[i].run["outputs"]["range_csv"] = p;
            }
        }
    };
    if (jobs == 1 || opt.seeds.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < std::min<std::size_t>(jobs, opt.seeds.size()); ++j)
            pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    json runs = json::array();
    for (PerSeed& r : results) {
        runs.push_back(std::move(r.run));
        for (std::string& w : r.warnings) warnings.push_back(std::move(w));
    }
    json out{{"command", "ladder"},
             {"kind", fiber_graph ? "tree" : "strip"},
             {"a", opt.a},
             {"steps", opt.steps},
             {"seeds", opt.seeds},
             {"jobs", jobs},
             {"runs", runs}};
    if (!fiber_graph) out["width"] = opt.width;
    return out;
}

// ---------------------------------------------------------------------- z2

struct Z2Options {
    std::string a = "1";
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::string csv;
};

json run_z2(const Z2Options& opt, const GlobalOptions& global, std::vector<std::string>&) {
    if (opt.steps < 1) throw errw::domain_error("z2: need --steps >= 1");
    double a = errw::to_double(errw::parse_rational(opt.a));
    errw::RandomSource rng(opt.seed);
    errw::LadderStats stats = errw::z2_occupation(a, opt.steps, rng);
    std::vector<double> crossed;
    std::uint64_t total = 0;
    for (std::uint64_t c : stats.counts) {
        total += c;
        if (c > 0) crossed.push_back(static_cast<double>(c));
    }
    json outputs = json::object();
    if (!opt.csv.empty()) {
        std::string p = resolve_output(global, opt.csv);
        errw::write_z2_csv(p, stats);
        outputs["csv"] = p;
    }
    return json{{"command", "z2"},
                {"a", opt.a},
                {"steps", opt.steps},
                {"seed", opt.seed},
                {"returns", stats.returns_total},
                {"max_distance", stats.max_distance},
                {"crossed_edges", crossed.size()},
                {"total_crossings", total},
                {"gini", errw::gini(crossed)},
                {"outputs", outputs}};
}

int run_with_args(std::vector<std::string> args, bool allow_config);

int dispatch_config(const GlobalOptions& global) {
    std::ifstream in(global.config_path);
    if (!in) throw errw::domain_error("cannot open config file: " + global.config_path);
    json cfg = json::parse(in, nullptr, /*allow_exceptions=*/true);
    if (!cfg.is_object() || !cfg.contains("subcommand") || !cfg["subcommand"].is_string())
        throw errw::domain_error("config: need an object with a \"subcommand\" string");
    std::vector<std::string> args;
    if (global.strict) args.push_back("--strict");
    if (!global.output_dir.empty()) {
        args.push_back("--output-dir");
        args.push_back(global.output_dir);
    }
    args.push_back(cfg["subcommand"].get<std::string>());
    if (cfg.contains("options")) {
        if (!cfg["options"].is_object()) throw errw::domain_error("config: options must be an object");
        for (const auto& [key, value] : cfg["options"].items()) {
            std::string flag = "--" + key;
            if (value.is_boolean()) {
                if (value.get<bool>()) args.push_back(flag);
            } else if (value.is_string()) {
                args.push_back(flag);
                args.push_back(value.get<std::string>());
            } else if (value.is_number_integer()) {
                args.push_back(flag);
                args.push_back(std::to_string(value.get<long long>()));
            } else if (value.is_number_unsigned()) {
                args.push_back(flag);
                args.push_back(std::to_string(value.get<unsigned long long>()));
            } else if (value.is_number_float()) {
                args.push_back(flag);
                args.push_back(json(value).dump());
            } else if (value.is_array()) {
                std::string joined;
                for (const auto& item : value) {
                    if (!joined.empty()) joined += ",";
                    joined += item.is_string() ? item.get<std::string>() : json(item).dump();
                }
                args.push_back(flag);
                args.push_back(joined);
            } else {
                throw errw::domain_error("config: unsupported value for option " + key);
            }
        }
    }
    return run_with_args(std::move(args), /*allow_config=*/false);
}

int run_with_args(std::vector<std::string> args, bool allow_config) {
    CLI::App app{"edge-reinforced random walk toolkit"};
    app.require_subcommand(0, 1);
    app.fallthrough(); // inherited: app-level flags may follow the subcommand

    GlobalOptions global;
    const char* env_dir = std::getenv("ERRW_OUTPUT_DIR");
    global.output_dir = env_dir ? env_dir : "";
    app.add_flag("--strict", global.strict,
                 "escalate numerical-degeneracy warnings to exit code 4");
    app.add_option("--output-dir", global.output_dir,
                   "directory for relative output paths (default: $ERRW_OUTPUT_DIR or .)");
    CLI::Option* config_opt = nullptr;
    if (allow_config)
        config_opt = app.add_option("--config", global.config_path,
                                    "JSON file {\"subcommand\":..., \"options\":{...}}");

    auto add_graph = [](CLI::App* sc, GraphOptions& g, bool with_a = true) {
        CLI::Option* builtin = sc->add_option(
            "--graph", g.builtin, "builtin graph (triangle, path:N, cycle:N, star:N, complete:N)");
        CLI::Option* file =
            sc->add_option("--graph-file", g.file, "edge-list file (u v [weight] per line)");
        builtin->excludes(file);
        file->excludes(builtin);
        if (with_a)
            sc->add_option("--a", g.a, "uniform initial edge weight (rational, default 1)");
    };

    SimulateOptions sim;
    CLI::App* sc_sim = app.add_subcommand("simulate", "run a reinforced walk");
    add_graph(sc_sim, sim.graph);
    sc_sim->add_option("--v0", sim.v0, "start vertex (default: first)");
    sc_sim->add_option("--steps", sim.steps, "number of steps")->required();
    sc_sim->add_option("--seed", sim.seed, "random seed")->required();
    sc_sim->add_option("--traj-csv", sim.traj_csv, "write the trajectory (t,vertex)");
    sc_sim->add_option("--stats-csv", sim.stats_csv,
                       "write edge statistics (edge,tail,head,k_t,alpha_t)");

    DensityEvalOptions dens;
    CLI::App* sc_dens =
        app.add_subcommand("density-eval", "evaluate the limiting occupation density");
    add_graph(sc_dens, dens.graph);
    sc_dens->add_option("--v0", dens.v0, "start vertex (default: first)");
    sc_dens->add_option("--x", dens.x, "comma-separated edge weights summing to 1")->required();

    SampleEnvOptions env;
    CLI::App* sc_env =
        app.add_subcommand("sample-env", "sample environments from the occupation density");
    add_graph(sc_env, env.graph);
    sc_env->add_option("--v0", env.v0, "start vertex (default: first)");
    sc_env->add_option("--samples", env.samples, "retained states (default 10000)");
    sc_env->add_option("--burn-in", env.burn_in, "discarded adaptation steps (default 2000)");
    sc_env->add_option("--thin", env.thin, "keep every thin-th state (default 1)");
    sc_env->add_option("--seed", env.seed, "random seed")->required();
    sc_env->add_option("--csv", env.csv, "write retained states (x0..,log_density)");

    MixtureCheckOptions mix;
    CLI::App* sc_mix = app.add_subcommand(
        "mixture-check", "compare a Monte Carlo mixture probability with the exact value");
    add_graph(sc_mix, mix.graph);
    sc_mix->add_option("--v0", mix.v0, "start vertex (default: path start)");
    sc_mix->add_option("--path", mix.path, "comma-separated vertex names")->required();
    sc_mix->add_option("--samples", mix.samples, "retained states (default 100000)");
    sc_mix->add_option("--burn-in", mix.burn_in, "discarded adaptation steps (default 5000)");
    sc_mix->add_option("--thin", mix.thin, "keep every thin-th state (default 1)");
    sc_mix->add_option("--seed", mix.seed, "random seed")->required();

    BayesOptions bay;
    CLI::App* sc_bay = app.add_subcommand(
        "bayes", "marginal likelihoods and Bayes factors for an observed sequence");
    add_graph(sc_bay, bay.graph);
    sc_bay->add_option("--v0", bay.v0, "prior start vertex (default: first data symbol)");
    sc_bay->add_option("--path", bay.path, "comma-separated vertex names");
    sc_bay->add_option("--data", bay.data_file, "sequence file, one vertex name per line");
    sc_bay->add_option("--iid-dirichlet", bay.iid_dirichlet,
                       "Dirichlet parameter per state for the iid model (default 1)");
    sc_bay->add_option("--row-dirichlet", bay.row_dirichlet,
                       "Dirichlet parameter per transition row (default 1)");

    TreeCheckOptions tre;
    CLI::App* sc_tre = app.add_subcommand(
        "tree-check", "urn and Dirichlet-environment equivalence on an acyclic graph");
    add_graph(sc_tre, tre.graph);
    sc_tre->add_option("--v0", tre.v0, "start vertex (default: first)");
    sc_tre->add_option("--path", tre.path, "comma-separated vertex names");
    sc_tre->add_option("--steps", tre.steps, "sample a path of this length via the urns");
    sc_tre->add_option("--seed", tre.seed, "random seed for --steps");

    LadderOptions lad;
    CLI::App* sc_lad =
        app.add_subcommand("ladder", "long reinforced run on an infinite strip");
    sc_lad->add_option("--d", lad.width, "strip width (fiber = path on d vertices)");
    sc_lad->add_option("--fiber-file", lad.fiber_file, "edge-list file with a tree fiber");
    sc_lad->add_option("--a", lad.a, "uniform initial edge weight (rational, default 1)");
    sc_lad->add_option("--steps", lad.steps, "number of steps")->required();
    sc_lad->add_option("--seeds", lad.seeds, "comma-separated seeds, one run each")
        ->required()
        ->delimiter(',');
    sc_lad->add_option("--jobs", lad.jobs, "worker threads across seeds (default 1)");
    sc_lad->add_option("--heatmap-csv", lad.heatmap_csv,
                       "write occupation heatmap (level,fiber_vertex_or_rung,...)");
    sc_lad->add_option("--range-csv", lad.range_csv, "write range trace (t,max_distance)");

    Z2Options z2;
    CLI::App* sc_z2 = app.add_subcommand("z2", "reinforced run on the square lattice");
    sc_z2->add_option("--a", z2.a, "uniform initial edge weight (rational, default 1)");
    sc_z2->add_option("--steps", z2.steps, "number of steps")->required();
    sc_z2->add_option("--seed", z2.seed, "random seed")->required();
    sc_z2->add_option("--csv", z2.csv, "write crossing counts (x,y,dir,count)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (config_opt && !global.config_path.empty()) {
            if (app.get_subcommands().size() > 0)
                throw errw::domain_error("--config replaces the subcommand and its flags");
            return dispatch_config(global);
        }
        std::vector<std::string> warnings;
        json out;
        if (sc_sim->parsed())
            out = run_simulate(sim, global, warnings);
        else if (sc_dens->parsed())
            out = run_density_eval(dens, global, warnings);
        else if (sc_env->parsed())
            out = run_sample_env(env, global, warnings);
        else if (sc_mix->parsed())
            out = run_mixture_check(mix, global, warnings);
        else if (sc_bay->parsed())
            out = run_bayes(bay, global, warnings);
        else if (sc_tre->parsed())
            out = run_tree_check(tre, global, warnings);
        else if (sc_lad->parsed())
            out = run_ladder(lad, global, warnings);
        else if (sc_z2->parsed())
            out = run_z2(z2, global, warnings);
        else {
            std::cerr << "error: no subcommand given (see --help)\n";
            return 2;
        }
        out["warnings"] = warnings;
        std::cout << out.dump(2) << "\n";
        return (global.strict && !warnings.empty()) ? 4 : 0;
    } catch (const errw::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_with_args(std::move(args), /*allow_config=*/true);
}
