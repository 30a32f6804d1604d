#pragma once

#include <string>

#include "gridnav/bench.hpp"
#include "gridnav/mapping.hpp"
#include "gridnav/planner.hpp"

namespace gridnav {

// CSV / JSON artifact writers. All files use LF line endings and '.' as the
// decimal separator.

// `t,coverage,p_e`
void write_coverage_csv(const MappingTrace& trace, const std::string& path);

// `t,av_id,n1,n2`
void write_waypoints_csv(const MappingTrace& trace, const std::string& path);

// `m,n1,n2`
void write_path_csv(const DiscretePath& path, const std::string& file);

// `algorithm,alpha,weight_kind,distance,radio_weight,combined,expanded,reexpansions,runtime_ms`
void write_plan_summary_csv(Algorithm algorithm, double alpha, const std::string& weight_name,
                            const PlanResult& result, double runtime_ms, const std::string& file);

// `n1,n2,weight`
void write_radio_csv(const RadioWeightMap& radio, const std::string& file);

// one row per BenchmarkRow:
// `weight,algorithm,alpha,trials,distance_increase_pct,...,runtime_increase_pct`
void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, const std::string& file);

// machine-readable record of a benchmark run (seed, sweep, artifact version)
void write_manifest_json(const BenchmarkSpec& spec, const std::string& scenario_path,
                         const std::string& file);

} // namespace gridnav
