#include "evset/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "evset/counterexample.hpp"
#include "evset/error.hpp"
#include "evset/io.hpp"
#include "evset/suites.hpp"
#include "evset/version.hpp"

namespace evset {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOpts {
    std::string graph_spec = "z";
    std::string x0_label;
    std::uint64_t seed = 1;
    std::string out_dir;
    std::size_t support_cap = 5'000'000;
    double prune_epsilon = 0.0;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->fallthrough();
    cmd->add_option("--graph", o.graph_spec, "graph family spec (z, z2, z3, tree3, cycle,n=7, pendant_tower,hmax=..,nmax=.., finite:FILE)");
    cmd->add_option("--x0", o.x0_label, "start vertex label (default: family origin)");
    cmd->add_option("--seed", o.seed, "master seed; all randomness derives from it");
    cmd->add_option("--out", o.out_dir, "output directory (default: $EVSET_OUTDIR or .)");
    cmd->add_option("--support-cap", o.support_cap, "max stored entries for exact propagation");
    cmd->add_option("--prune-eps", o.prune_epsilon, "drop entries below this (pruned mass reported, not renormalized)");
    cmd->add_option("--threads", o.threads, "worker threads for Monte Carlo trials");
}

fs::path resolve_out_dir(const CommonOpts& o) {
    std::string dir = o.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("EVSET_OUTDIR");
        dir = env ? env : ".";
    }
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

PropagationOptions prop_of(const CommonOpts& o) {
    return PropagationOptions{o.support_cap, o.prune_epsilon};
}

struct RunContext {
    fs::path out;
    std::chrono::steady_clock::time_point started;
    json config;
    std::vector<std::string> cap_events;
};

RunContext begin_run(const CommonOpts& o, const std::string& command) {
    RunContext ctx;
    ctx.out = resolve_out_dir(o);
    ctx.started = std::chrono::steady_clock::now();
    ctx.config = json{{"command", command},
                      {"graph", o.graph_spec},
                      {"x0", o.x0_label},
                      {"seed", o.seed},
                      {"support_cap", o.support_cap},
                      {"prune_eps", o.prune_epsilon},
                      {"threads", o.threads}};
    return ctx;
}

void finish_run(RunContext& ctx) {
    auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - ctx.started)
                       .count();
    json meta{{"config", ctx.config},
              {"version", kVersion},
              {"rng", kRngId},
              {"wall_ms", wall_ms},
              {"cap_events", ctx.cap_events}};
    write_text_file((ctx.out / "run_metadata.json").string(), meta.dump(2) + "\n");
}

VertexId start_vertex(const GraphFamily& g, const CommonOpts& o) {
    return o.x0_label.empty() ? g.origin() : g.parse_vertex(o.x0_label);
}

int exit_code_for(const std::vector<BoundReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass && !r.vacuous) return 2;
    return 0;
}

json trajectory_record(std::uint64_t trial, const SuperstepRecord& rec, bool members) {
    json j{{"trial", trial}, {"m", rec.m},
           {"T", rec.time},  {"L", rec.gap},
           {"U", rec.u},     {"set_size", rec.set_size},
           {"pi_mass", rec.pi_mass}};
    if (members) j["members"] = rec.members;
    return j;
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_entropy(const CommonOpts& common, int n_max) {
    GraphFamily g = GraphFamily::from_spec(common.graph_spec);
    VertexId x0 = start_vertex(g, common);
    RunContext ctx = begin_run(common, "entropy");
    ctx.config["nmax"] = n_max;

    EntropySeries series;
    PropagationStats stats;
    if (radial_applicable(g, x0) && common.prune_epsilon == 0.0)
        series = radial::entropy_series_root(radial::TreeQuotient{g.tree_degree()}, n_max);
    else
        series = entropy_series(g, x0, n_max, prop_of(common), &stats);
    if (stats.pruned_mass > 0.0)
        ctx.cap_events.push_back("pruned_mass=" + fmt17(stats.pruned_mass));
    write_text_file((ctx.out / "entropy.csv").string(), entropy_series_csv(series));
    finish_run(ctx);
    return 0;
}

int cmd_green(const CommonOpts& common, int t_max) {
    GraphFamily g = GraphFamily::from_spec(common.graph_spec);
    VertexId x0 = start_vertex(g, common);
    RunContext ctx = begin_run(common, "green");
    ctx.config["tmax"] = t_max;

    std::vector<GreenPoint> series;
    PropagationStats stats;
    if (radial_applicable(g, x0) && common.prune_epsilon == 0.0)
        series = radial::green_from_root(radial::TreeQuotient{g.tree_degree()}, t_max);
    else
        series = green_partial_sum(g, x0, t_max, prop_of(common), &stats);
    if (stats.pruned_mass > 0.0)
        ctx.cap_events.push_back("pruned_mass=" + fmt17(stats.pruned_mass));
    write_text_file((ctx.out / "green.csv").string(), green_series_csv(series));
    finish_run(ctx);
    return 0;
}

int cmd_escape(const CommonOpts& common, int n, int radius, double c, int cert_lo, int cert_hi) {
    GraphFamily g = GraphFamily::from_spec(common.graph_spec);
    VertexId x0 = start_vertex(g, common);
    RunContext ctx = begin_run(common, "escape");
    ctx.config["n"] = n;
    ctx.config["radius"] = radius;
    ctx.config["c"] = c;
    ctx.config["cert_range"] = {cert_lo, cert_hi};

    EntropyCertificate cert =
        certify_entropy_constant(g, {x0}, cert_lo, cert_hi, c, prop_of(common));
    std::vector<BoundReport> reports{certificate_report(cert)};
    if (cert.verified) {
        auto A = g.ball(x0, radius);
        reports.push_back(check_escape_bound(g, x0, n, A, cert, prop_of(common), true));
    }
    std::vector<json> lines;
    for (const auto& r : reports) lines.push_back(report_to_json(r));
    write_text_file((ctx.out / "escape.jsonl").string(), to_jsonl(lines));
    finish_run(ctx);
    return exit_code_for(reports);
}

int cmd_evolve(const CommonOpts& common, double c, int m_max, std::uint64_t trials,
               bool members) {
    GraphFamily g = GraphFamily::from_spec(common.graph_spec);
    VertexId x0 = start_vertex(g, common);
    RunContext ctx = begin_run(common, "evolve");
    ctx.config["c"] = c;
    ctx.config["mmax"] = m_max;
    ctx.config["trials"] = trials;
    ctx.config["members"] = members;

    std::vector<json> lines;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        RngStream rng = seed_stream(common.seed, trial);
        EvolvingTrajectory traj = simulate_trajectory(g, x0, c, m_max, rng, prop_of(common),
                                                      EvolveEngine::Auto, members);
        if (traj.truncated)
            ctx.cap_events.push_back("trajectory " + std::to_string(trial) + " truncated");
        for (const auto& rec : traj.steps)
            lines.push_back(trajectory_record(trial, rec, members));
    }
    write_text_file((ctx.out / "trajectories.jsonl").string(), to_jsonl(lines));

    auto decay = decay_profile(g, x0, c, m_max, trials, common.seed, prop_of(common),
                               EvolveEngine::Auto, common.threads);
    std::string csv = "m,mean_sqrt_pi,std_error,alive\n";
    for (const auto& p : decay)
        csv += std::to_string(p.m) + "," + fmt17(p.mean_sqrt_pi) + "," + fmt17(p.std_error) +
               "," + std::to_string(p.alive) + "\n";
    write_text_file((ctx.out / "decay.csv").string(), csv);
    finish_run(ctx);
    return 0;
}

int cmd_verify(const CommonOpts& common, const std::string& suite, double c,
               std::uint64_t trials, int cert_lo, int cert_hi) {
    GraphFamily g = GraphFamily::from_spec(common.graph_spec);
    VertexId x0 = start_vertex(g, common);
    RunContext ctx = begin_run(common, "verify");
    ctx.config["suite"] = suite;
    ctx.config["c"] = c;
    ctx.config["trials"] = trials;
    ctx.config["cert_range"] = {cert_lo, cert_hi};

    std::vector<BoundReport> reports;
    if (suite == "unconditional" || suite == "all") {
        auto r = run_unconditional_suite(100, 1000, 10'000, derive_seed(common.seed, 1),
                                         prop_of(common));
        reports.insert(reports.end(), r.begin(), r.end());
    }
    if (suite == "conditional" || suite == "all") {
        SuiteOptions sopt;
        sopt.seed = derive_seed(common.seed, 2);
        sopt.trials = trials;
        sopt.n_threads = common.threads;
        sopt.cert_lo = cert_lo;
        sopt.cert_hi = cert_hi;
        sopt.prop = prop_of(common);
        auto r = run_conditional_suite(g, x0, c, sopt);
        reports.insert(reports.end(), r.begin(), r.end());
    }
    if (suite == "duality" || suite == "all") {
        auto r = run_duality_suite(g, x0, c, trials, derive_seed(common.seed, 3), prop_of(common));
        reports.insert(reports.end(), r.begin(), r.end());
    }
    if (reports.empty())
        throw Error(ErrorCode::InvalidArgument,
                    "unknown suite '" + suite + "' (unconditional|conditional|duality|all)");

    std::vector<json> lines;
    for (const auto& r : reports) lines.push_back(report_to_json(r));
    write_text_file((ctx.out / "verify.jsonl").string(), to_jsonl(lines));
    finish_run(ctx);
    return exit_code_for(reports);
}

int cmd_counterexample(const CommonOpts& common, int hmax, int nmax, int window_hi,
                       std::uint64_t trials, std::int64_t horizon) {
    GraphFamily g = build_counterexample(hmax, nmax);
    RunContext ctx = begin_run(common, "counterexample");
    ctx.config["hmax"] = hmax;
    ctx.config["nmax"] = nmax;
    ctx.config["window_hi"] = window_hi;
    ctx.config["trials"] = trials;
    ctx.config["horizon"] = horizon;

    // sweep: every backbone vertex, the root of the first tallest tree, and
    // a mid-depth vertex inside it
    std::vector<VertexId> starts;
    for (int n = 1; n <= nmax; ++n) starts.push_back(g.parse_vertex("pt:" + std::to_string(n)));
    const auto& heights = g.tower_heights();
    int tallest = static_cast<int>(std::max_element(heights.begin(), heights.end()) -
                                   heights.begin()) + 1;
    starts.push_back(g.parse_vertex("pt:" + std::to_string(tallest) + "/"));
    std::string mid(static_cast<std::size_t>(heights[static_cast<std::size_t>(tallest - 1)] / 2),
                    '0');
    starts.push_back(g.parse_vertex("pt:" + std::to_string(tallest) + "/" + mid));

    auto profiles = per_start_entropy_rates(g, starts, window_hi, prop_of(common));
    std::string csv = "start,window_lo,window_hi,rate,tree_depth\n";
    for (const auto& p : profiles)
        csv += p.start.label() + "," + std::to_string(p.window_lo) + "," +
               std::to_string(p.window_hi) + "," + fmt17(p.rate) + "," +
               std::to_string(p.tree_depth) + "\n";
    write_text_file((ctx.out / "rates.csv").string(), csv);

    VertexId x0 = common.x0_label.empty() ? g.parse_vertex("pt:1")
                                          : g.parse_vertex(common.x0_label);
    auto diag = recurrence_diagnostics(g, x0, {horizon / 100, horizon / 10, horizon}, trials,
                                       200, common.seed, prop_of(common), common.threads);
    std::vector<json> lines;
    for (const auto& p : diag.returns)
        lines.push_back(json{{"kind", "return_frequency"},
                             {"horizon", p.horizon},
                             {"frequency", p.frequency},
                             {"std_error", p.std_error}});
    if (!diag.green.empty()) {
        const auto& last = diag.green.back();
        lines.push_back(json{{"kind", "green_partial_sum"},
                             {"t", last.t},
                             {"partial_sum", last.partial_sum}});
    }
    lines.push_back(json{{"kind", "backbone_projection"},
                         {"moves", diag.projection.moves},
                         {"up_fraction", diag.projection.up_fraction},
                         {"std_error", diag.projection.std_error},
                         {"lazy_holds", diag.projection.lazy_holds},
                         {"pass", diag.projection.pass}});
    lines.push_back(json{{"kind", "line_resistance"},
                         {"from", 1},
                         {"to", nmax},
                         {"resistance", diag.resistance_across_backbone}});
    for (const auto& r : check_hitting_time_bound({7, 15, 31, 63}))
        lines.push_back(report_to_json(r));
    lines.push_back(report_to_json(drift_check(g, tallest, 100'000, derive_seed(common.seed, 77))));
    write_text_file((ctx.out / "diagnostics.jsonl").string(), to_jsonl(lines));
    finish_run(ctx);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"evolving-set random walk toolkit"};
    app.set_config("--config", "", "key=value config file (subcommand-scoped keys, e.g. entropy.nmax=4); flags override");
    app.require_subcommand(1);

    CommonOpts common;
    int n_max = 50, t_max = 100, m_max = 10, radius = 1, n_escape = 20;
    int cert_lo = 5, cert_hi = 150;
    double c = 0.2;
    std::uint64_t trials = 10'000;
    bool members = false;
    std::string suite = "all";
    int hmax = 12, nmax = 8, window_hi = 40;
    std::int64_t horizon = 1'000'000;
    std::uint64_t ce_trials = 500;

    auto* entropy_cmd = app.add_subcommand("entropy", "exact entropy series E_n");
    add_common(entropy_cmd, common);
    entropy_cmd->add_option("--nmax", n_max, "series length");

    auto* green_cmd = app.add_subcommand("green", "return probabilities and Green partial sums");
    add_common(green_cmd, common);
    green_cmd->add_option("--tmax", t_max, "horizon");

    auto* escape_cmd = app.add_subcommand("escape", "escape probability bound for A = ball(x0, r)");
    add_common(escape_cmd, common);
    escape_cmd->add_option("--n", n_escape, "step count");
    escape_cmd->add_option("--radius", radius, "ball radius for A");
    escape_cmd->add_option("--c", c, "entropy growth constant to certify and use");
    escape_cmd->add_option("--cert-lo", cert_lo, "certification range start");
    escape_cmd->add_option("--cert-hi", cert_hi, "certification range end");

    auto* evolve_cmd = app.add_subcommand("evolve", "intermittent evolving set trajectories");
    add_common(evolve_cmd, common);
    evolve_cmd->add_option("--c", c, "entropy growth constant in the gap schedule");
    evolve_cmd->add_option("--mmax", m_max, "supersteps per trajectory");
    evolve_cmd->add_option("--trials", trials, "trajectory count");
    evolve_cmd->add_flag("--members", members, "record full states per superstep");

    auto* verify_cmd = app.add_subcommand("verify", "inequality verification suites");
    add_common(verify_cmd, common);
    verify_cmd->add_option("--suite", suite, "unconditional|conditional|duality|all");
    verify_cmd->add_option("--c", c, "entropy growth constant for conditional checks");
    verify_cmd->add_option("--trials", trials, "Monte Carlo trials per estimate");
    verify_cmd->add_option("--cert-lo", cert_lo, "certification range start");
    verify_cmd->add_option("--cert-hi", cert_hi, "certification range end");

    auto* ce_cmd = app.add_subcommand("counterexample", "pendant tower sweep and diagnostics");
    add_common(ce_cmd, common);
    ce_cmd->add_option("--hmax", hmax, "tree height cap");
    ce_cmd->add_option("--nmax", nmax, "backbone length");
    ce_cmd->add_option("--window-hi", window_hi, "rate window end (window is [hi/2, hi])");
    ce_cmd->add_option("--trials", ce_trials, "return-frequency trials");
    ce_cmd->add_option("--horizon", horizon, "largest return-frequency horizon");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (entropy_cmd->parsed()) return cmd_entropy(common, n_max);
        if (green_cmd->parsed()) return cmd_green(common, t_max);
        if (escape_cmd->parsed())
            return cmd_escape(common, n_escape, radius, c, cert_lo, cert_hi);
        if (evolve_cmd->parsed()) return cmd_evolve(common, c, m_max, trials, members);
        if (verify_cmd->parsed())
            return cmd_verify(common, suite, c, trials, cert_lo, cert_hi);
        if (ce_cmd->parsed())
            return cmd_counterexample(common, hmax, nmax, window_hi, ce_trials, horizon);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace evset
