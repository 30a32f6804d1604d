#pragma once

#include <optional>
#include <vector>

#include "gridnav/grid.hpp"
#include "gridnav/raster.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

// 2D range sensor: ray_count equally spaced rays marched outwards in
// range_step cell increments up to rho_max meters.
struct SensorConfig {
    double rho_max = 12.0;
    int ray_count = 720;
    double range_step = 0.5;

    void validate() const;
};

struct Observation {
    Cell cell;
    std::uint8_t value; // 0 free, 1 obstacle
};

// One scan from a free pose: traversed free cells report 0, the first
// obstacle cell hit on each ray reports 1 and stops the ray; nothing beyond
// an obstacle or the maximum range is reported. Each cell appears at most
// once per scan.
std::vector<Observation> sensor_scan(const BinaryGrid& truth, Cell pose, const SensorConfig& cfg);

// Write a batch of observations into a local map copy (latest value wins).
TernaryGrid update_local(const TernaryGrid& local, const std::vector<Observation>& observations);

// Fusion of a local map into the main map: decided local cells override,
// undecided local cells leave the main value untouched.
TernaryGrid fuse_into_main(const TernaryGrid& main, const TernaryGrid& local);

// Next exploration waypoint: the undecided cell nearest to the current
// position (ties broken by smallest (n1, n2)), displaced by the integer
// offset xi and clamped to the grid. If the clamped target is a known
// obstacle the unoffset minimizer is used instead. Empty when the local map
// has no undecided cells left.
std::optional<Cell> select_waypoint(const TernaryGrid& local, Cell position,
                                    std::pair<int, int> xi);

// Same, drawing each offset component uniformly from
// [-offset_range, offset_range] (always consumes two draws).
std::optional<Cell> select_waypoint(const TernaryGrid& local, Cell position, SplitMix64& rng,
                                    int offset_range);

// Fraction of cells classified as free or obstacle.
double coverage(const TernaryGrid& map);
double complement_coverage(const TernaryGrid& map);

struct ErrorMetrics {
    BinaryGrid fp_map; // estimated obstacle, truly free
    BinaryGrid fn_map; // estimated free, truly obstacle
    double p_e = 0.0;  // (fp + fn) / N^2
};

ErrorMetrics error_metrics(const TernaryGrid& estimated, const BinaryGrid& truth);

struct MappingParams {
    int n_av = 4;
    double sync_period = 3.0; // seconds between map synchronizations
    double time_step = 0.25;  // simulation step, seconds
    double epsilon = 1e-4;    // stop when missing coverage <= epsilon
    int offset_range = 5;     // waypoint offset drawn from [-range, range]
    double speed = 2.0;       // meters / second
    std::uint64_t seed = 1;
    bool record_sync_log = false; // keep per-sync local map snapshots
    double max_time = 86400.0;    // simulated seconds before giving up

    void validate() const;
};

struct CoveragePoint {
    double t;
    double coverage;
    double p_e;
};

struct SyncEvent {
    double t;
    int av_id;
    TernaryGrid local; // the local map as sent to the main map
};

struct WaypointEvent {
    double t;
    int av_id;
    Cell waypoint;
};

// Per-vehicle state while the simulation runs.
struct AvState {
    int id = 0;
    Cell position;
    TernaryGrid local_map;
    std::optional<Cell> current_waypoint;
    double next_sync_time = 0.0;
    std::optional<DiscretePath> route;
    std::size_t route_pos = 0;
    double move_credit = 0.0; // unspent travel distance, cell units
};

struct MappingTrace {
    std::vector<CoveragePoint> coverage_series;
    TernaryGrid final_map;
    std::optional<double> convergence_time;
    bool terminated_blocked = false;
    std::vector<WaypointEvent> waypoint_log;
    std::vector<SyncEvent> sync_log; // only when record_sync_log is set
};

// Deterministic multi-vehicle exploration of the ground-truth map. Each
// step, every vehicle scans, folds the scan into its local map, advances
// along its planned route, picks a new waypoint when it has none, and at its
// scheduled synchronization instants pushes its local map into the main map
// and pulls the fused result back. Ends when the main map's missing coverage
// drops to epsilon or no vehicle can reach an undecided cell.
MappingTrace run_mapping(const BinaryGrid& truth, const MappingParams& params,
                         const SensorConfig& cfg, const std::vector<Cell>& starts);

// Earliest time in the coverage series with C(t) >= 1 - epsilon; throws if
// the trace never got there.
double convergence_time(const MappingTrace& trace, double epsilon);

} // namespace gridnav
