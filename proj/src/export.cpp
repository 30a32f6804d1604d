#include "gridnav/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gridnav/version.hpp"

namespace gridnav {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void write_coverage_csv(const MappingTrace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,coverage,p_e\n";
    for (const CoveragePoint& p : trace.coverage_series)
        out << num(p.t) << "," << num(p.coverage) << "," << num(p.p_e) << "\n";
}

void write_waypoints_csv(const MappingTrace& trace, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,av_id,n1,n2\n";
    for (const WaypointEvent& e : trace.waypoint_log)
        out << num(e.t) << "," << e.av_id << "," << e.waypoint.n1 << "," << e.waypoint.n2 << "\n";
}

void write_path_csv(const DiscretePath& path, const std::string& file) {
    std::ofstream out = open_out(file);
    out << "m,n1,n2\n";
    for (std::size_t m = 0; m < path.points.size(); ++m)
        out << m + 1 << "," << path.points[m].n1 << "," << path.points[m].n2 << "\n";
}

void write_plan_summary_csv(Algorithm algorithm, double alpha, const std::string& weight_name,
                            const PlanResult& result, double runtime_ms, const std::string& file) {
    std::ofstream out = open_out(file);
    out << "algorithm,alpha,weight_kind,distance,radio_weight,combined,expanded,reexpansions,"
           "runtime_ms\n";
    out << algorithm_name(algorithm) << "," << num(alpha) << "," << weight_name << ","
        << num(result.distance) << "," << num(result.radio_weight) << ","
        << num(result.combined_cost) << "," << result.expanded_nodes << ","
        << result.reexpansions << "," << num(runtime_ms) << "\n";
}

void write_radio_csv(const RadioWeightMap& radio, const std::string& file) {
    std::ofstream out = open_out(file);
    out << "n1,n2,weight\n";
    const GridGeometry& geom = radio.geometry();
    for (int i = 1; i <= geom.n; ++i)
        for (int j = 1; j <= geom.n; ++j)
            out << i << "," << j << "," << num(radio.at(Cell{i, j})) << "\n";
}

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& file) {
    std::ofstream out = open_out(file);
    out << "weight,algorithm,alpha,trials,distance_increase_pct,radio_increase_pct,"
           "combined_decrease_pct,runtime_increase_pct\n";
    for (const BenchmarkRow& r : rows)
        out << weight_law_name(r.weight.law) << "," << algorithm_name(r.algorithm) << ","
            << num(r.alpha) << "," << r.trials_used << "," << num(r.distance_increase_pct) << ","
            << num(r.radio_increase_pct) << "," << num(r.combined_decrease_pct) << ","
            << num(r.runtime_increase_pct) << "\n";
}

void write_manifest_json(const BenchmarkSpec& spec, const std::string& scenario_path,
                         const std::string& file) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["scenario"] = scenario_path;
    j["seed"] = spec.seed;
    j["trials"] = spec.trials;
    j["baseline"] = algorithm_name(spec.baseline);
    j["alphas"] = spec.alpha_grid;
    std::vector<std::string> algs;
    for (Algorithm a : spec.algorithms) algs.push_back(algorithm_name(a));
    j["algorithms"] = algs;
    std::vector<std::string> weights;
    for (const WeightKind& w : spec.weight_kinds) weights.push_back(weight_law_name(w.law));
    j["weights"] = weights;
    std::ofstream out = open_out(file);
    out << j.dump(2) << "\n";
}

} // namespace gridnav
