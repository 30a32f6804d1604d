#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gridnav/export.hpp"
#include "gridnav/pgm.hpp"
#include "gridnav/scenario.hpp"
#include "gridnav/version.hpp"

namespace fs = std::filesystem;
using namespace gridnav;

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// Rescale a cell from the scenario grid onto a (possibly downsampled)
// planning grid that kept cell (1,1) and every L-th cell.
Cell scale_cell(Cell c, int factor) {
    if (factor == 1) return c;
    return Cell{1 + (c.n1 - 1) / factor, 1 + (c.n2 - 1) / factor};
}

int grid_scale_factor(const GridGeometry& scenario_geom, const GridGeometry& map_geom) {
    if (map_geom.n == scenario_geom.n) return 1;
    if (map_geom.n > 1 && (scenario_geom.n - 1) % (map_geom.n - 1) == 0)
        return (scenario_geom.n - 1) / (map_geom.n - 1);
    throw std::runtime_error("planning map size " + std::to_string(map_geom.n) +
                             " is not a downsampling of the scenario grid " +
                             std::to_string(scenario_geom.n));
}

std::vector<AccessPoint> scaled_aps(const Scenario& s, int factor) {
    std::vector<AccessPoint> aps = s.aps;
    for (AccessPoint& ap : aps) {
        ap.center = scale_cell(ap.center, factor);
        ap.coverage_radius /= factor;
    }
    return aps;
}

// The planning obstacle map: an explicit PGM when given, otherwise the
// post-processed ground truth of the scenario.
BinaryGrid planning_map(const Scenario& s, const std::string& map_path) {
    if (!map_path.empty()) return read_pgm_binary(map_path);
    return postprocess_obstacles(ternary_from_binary(truth_map(s)), s.post);
}

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("scenario", opts.scenario_path, "scenario file")->required();
    cmd->add_option("--out-dir", opts.out_dir, "output directory (created if missing)");
}

int run_map(const CommonOpts& opts, const std::optional<std::uint64_t>& seed,
            const std::optional<int>& n_av) {
    Scenario s = load_scenario_file(opts.scenario_path);
    if (seed) s.mapping.seed = *seed;
    if (n_av) {
        if (!s.av_starts.empty()) {
            if (static_cast<int>(s.av_starts.size()) < *n_av)
                throw std::runtime_error("scenario provides only " +
                                         std::to_string(s.av_starts.size()) + " start cells");
            s.av_starts.resize(static_cast<std::size_t>(*n_av));
        }
        s.mapping.n_av = *n_av;
    }
    const BinaryGrid truth = truth_map(s);
    const MappingTrace trace = run_mapping(truth, s.mapping, s.sensor, resolved_starts(s));

    fs::create_directories(opts.out_dir);
    write_coverage_csv(trace, join(opts.out_dir, "coverage.csv"));
    write_waypoints_csv(trace, join(opts.out_dir, "waypoints.csv"));
    write_pgm(trace.final_map, join(opts.out_dir, "map_final.pgm"));

    const ErrorMetrics err = error_metrics(trace.final_map, truth);
    if (trace.convergence_time)
        std::cout << "mapping converged at t=" << *trace.convergence_time << " s";
    else
        std::cout << "mapping stopped (blocked=" << (trace.terminated_blocked ? "yes" : "no")
                  << ")";
    std::cout << ", coverage=" << coverage(trace.final_map) << ", p_e=" << err.p_e << "\n";
    return 0;
}

int run_postprocess(const CommonOpts& opts, const std::string& in_path) {
    Scenario s = load_scenario_file(opts.scenario_path);
    const TernaryGrid estimated = read_pgm_ternary(in_path);
    const BinaryGrid out = postprocess_obstacles(estimated, s.post);
    fs::create_directories(opts.out_dir);
    write_pgm(out, join(opts.out_dir, "obstacle_map.pgm"));
    std::cout << "obstacle map: " << out.geometry().n << "x" << out.geometry().n << ", "
              << out.obstacle_count() << " obstacle cells\n";
    return 0;
}

int run_radiomap(const CommonOpts& opts, const std::string& weight_name) {
    Scenario s = load_scenario_file(opts.scenario_path);
    if (!weight_name.empty()) s.weight.law = weight_law_from_name(weight_name);
    const RadioWeightMap radio = build_radio_map(s.aps, s.weight, s.geom);
    fs::create_directories(opts.out_dir);
    write_pgm_weights(radio.geometry(), radio.values(), join(opts.out_dir, "radio_map.pgm"));
    write_radio_csv(radio, join(opts.out_dir, "radio_map.csv"));
    std::cout << "radio map (" << weight_law_name(s.weight.law) << "): max weight "
              << radio.max_value() << "\n";
    return 0;
}

int run_plan(const CommonOpts& opts, const std::string& map_path,
             const std::optional<double>& alpha, const std::string& algorithm_name_opt,
             const std::string& weight_name) {
    Scenario s = load_scenario_file(opts.scenario_path);
    if (alpha) s.planner.alpha = *alpha;
    if (!algorithm_name_opt.empty()) s.planner.algorithm = algorithm_from_name(algorithm_name_opt);
    if (!weight_name.empty()) s.weight.law = weight_law_from_name(weight_name);
    if (!s.planner.start || !s.planner.stop)
        throw std::runtime_error("scenario does not define plan.start / plan.stop");

    const BinaryGrid obstacles = planning_map(s, map_path);
    const int factor = grid_scale_factor(s.geom, obstacles.geometry());
    const RadioWeightMap radio =
        build_radio_map(scaled_aps(s, factor), s.weight, obstacles.geometry());

    PlanRequest req;
    req.obstacles = &obstacles;
    req.radio = &radio;
    req.start = scale_cell(*s.planner.start, factor);
    req.stop = scale_cell(*s.planner.stop, factor);
    req.alpha = s.planner.alpha;
    req.algorithm = s.planner.algorithm;

    const auto t0 = std::chrono::steady_clock::now();
    const PlanResult result = plan(req);
    const auto t1 = std::chrono::steady_clock::now();
    const double runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    fs::create_directories(opts.out_dir);
    write_path_csv(result.path, join(opts.out_dir, "path.csv"));
    write_plan_summary_csv(s.planner.algorithm, s.planner.alpha, weight_law_name(s.weight.law),
                           result, runtime_ms, join(opts.out_dir, "plan_summary.csv"));
    std::cout << algorithm_name(s.planner.algorithm) << " alpha=" << s.planner.alpha
              << ": distance=" << result.distance << ", radio=" << result.radio_weight
              << ", combined=" << result.combined_cost << ", expanded=" << result.expanded_nodes
              << "\n";
    return 0;
}

int run_bench(const CommonOpts& opts, const std::string& map_path,
              const std::optional<std::uint64_t>& seed, const std::optional<int>& trials) {
    Scenario s = load_scenario_file(opts.scenario_path);
    if (seed) s.bench.seed = *seed;
    if (trials) s.bench.trials = *trials;

    const BinaryGrid obstacles = planning_map(s, map_path);
    const int factor = grid_scale_factor(s.geom, obstacles.geometry());

    BenchmarkSpec spec;
    spec.obstacles = &obstacles;
    spec.aps = scaled_aps(s, factor);
    for (WeightLaw law : s.bench.weights)
        spec.weight_kinds.push_back(WeightKind{law, s.weight.gamma, s.weight.beta});
    spec.alpha_grid = s.bench.alphas;
    spec.algorithms = s.bench.algorithms;
    spec.baseline = s.bench.baseline;
    spec.trials = s.bench.trials;
    spec.seed = s.bench.seed;

    const std::vector<BenchmarkRow> rows = run_benchmark(spec);
    fs::create_directories(opts.out_dir);
    write_benchmark_csv(rows, join(opts.out_dir, "benchmark.csv"));
    write_manifest_json(spec, opts.scenario_path, join(opts.out_dir, "manifest.json"));
    std::cout << "benchmark: " << rows.size() << " rows over " << s.bench.trials << " trials\n";
    return 0;
}

int run_render(const CommonOpts& opts) {
    Scenario s = load_scenario_file(opts.scenario_path);
    fs::create_directories(opts.out_dir);
    write_pgm(truth_map(s), join(opts.out_dir, "truth.pgm"));
    std::cout << "wrote truth map (" << s.geom.n << "x" << s.geom.n << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("gridnav ") + kVersion +
                 " - cooperative mapping and radio-aware path planning"};
    app.require_subcommand(1);

    CommonOpts map_opts, post_opts, radio_opts, plan_opts, bench_opts, render_opts;
    std::optional<std::uint64_t> map_seed, bench_seed;
    std::optional<int> map_n_av, bench_trials;
    std::string post_in, radio_weight, plan_map, plan_algorithm, plan_weight, bench_map;
    std::optional<double> plan_alpha;

    CLI::App* cmd_map = app.add_subcommand("map", "run cooperative obstacle mapping");
    add_common(cmd_map, map_opts);
    cmd_map->add_option("--seed", map_seed, "override mapping.seed");
    cmd_map->add_option("--n-av", map_n_av, "override the vehicle count");

    CLI::App* cmd_post =
        app.add_subcommand("postprocess", "filter + binarize an estimated map into a planning map");
    add_common(cmd_post, post_opts);
    cmd_post->add_option("--in", post_in, "estimated map PGM (output of `map`)")->required();

    CLI::App* cmd_radio = app.add_subcommand("radiomap", "build the radio weight map");
    add_common(cmd_radio, radio_opts);
    cmd_radio->add_option("--weight", radio_weight, "onoff|amplitude|capacity|tent");

    CLI::App* cmd_plan = app.add_subcommand("plan", "plan a path between the scenario endpoints");
    add_common(cmd_plan, plan_opts);
    cmd_plan->add_option("--map", plan_map, "planning obstacle map PGM (default: post-processed truth)");
    cmd_plan->add_option("--alpha", plan_alpha, "override plan.alpha");
    cmd_plan->add_option("--algorithm", plan_algorithm, "od|wd|oa|wa");
    cmd_plan->add_option("--weight", plan_weight, "onoff|amplitude|capacity|tent");

    CLI::App* cmd_bench = app.add_subcommand("bench", "randomized start/stop benchmark sweep");
    add_common(cmd_bench, bench_opts);
    cmd_bench->add_option("--map", bench_map, "planning obstacle map PGM (default: post-processed truth)");
    cmd_bench->add_option("--seed", bench_seed, "override bench.seed");
    cmd_bench->add_option("--trials", bench_trials, "override bench.trials");

    CLI::App* cmd_render = app.add_subcommand("render", "write the scenario ground truth as PGM");
    add_common(cmd_render, render_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_map->parsed()) return run_map(map_opts, map_seed, map_n_av);
        if (cmd_post->parsed()) return run_postprocess(post_opts, post_in);
        if (cmd_radio->parsed()) return run_radiomap(radio_opts, radio_weight);
        if (cmd_plan->parsed())
            return run_plan(plan_opts, plan_map, plan_alpha, plan_algorithm, plan_weight);
        if (cmd_bench->parsed()) return run_bench(bench_opts, bench_map, bench_seed, bench_trials);
        if (cmd_render->parsed()) return run_render(render_opts);
    } catch (const NoPathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
