#include "gridnav/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "gridnav/planner.hpp"

namespace gridnav {

void SensorConfig::validate() const {
    if (!(rho_max > 0.0)) throw std::invalid_argument("sensor range must be > 0");
    if (ray_count < 8) throw std::invalid_argument("sensor needs at least 8 rays");
    if (!(range_step > 0.0 && range_step <= 1.0))
        throw std::invalid_argument("range step must be in (0,1] cells");
}

void MappingParams::validate() const {
    if (n_av < 1) throw std::invalid_argument("need at least one vehicle");
    if (!(sync_period > 0.0)) throw std::invalid_argument("sync period must be > 0");
    if (!(time_step > 0.0)) throw std::invalid_argument("time step must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    if (offset_range < 0) throw std::invalid_argument("offset range must be >= 0");
    if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
}

namespace {

// Shared ray-marching core. Cells are identified by rounding the sample
// point to the nearest cell center; an obstacle cell ends its ray whether or
// not this scan already reported it.
void scan_core(const BinaryGrid& truth, Cell pose, const SensorConfig& cfg,
               const std::vector<std::pair<double, double>>& dirs, std::vector<std::uint64_t>& stamp,
               std::uint64_t epoch, std::vector<Observation>& out) {
    const GridGeometry& geom = truth.geometry();
    if (!geom.contains(pose)) throw std::invalid_argument("sensor pose outside grid");
    if (truth.at(pose) != 0) throw std::invalid_argument("sensor pose lies on an obstacle");

    const int n = geom.n;
    const std::uint8_t* cells = truth.values().data();
    const double range_cells = cfg.rho_max / geom.delta;
    const int steps = static_cast<int>(range_cells / cfg.range_step);

    const std::size_t pose_idx = geom.index(pose);
    stamp[pose_idx] = epoch;
    out.push_back({pose, 0});

    const double r0 = static_cast<double>(pose.n1);
    const double c0 = static_cast<double>(pose.n2);
    for (const auto& [d1, d2] : dirs) {
        const double step1 = cfg.range_step * d1;
        const double step2 = cfg.range_step * d2;
        double r = r0;
        double c = c0;
        for (int s = 1; s <= steps; ++s) {
            r += step1;
            c += step2;
            const int ri = static_cast<int>(r + 0.5);
            const int ci = static_cast<int>(c + 0.5);
            if (ri < 1 || ri > n || ci < 1 || ci > n) break;
            const std::size_t idx = static_cast<std::size_t>(ri - 1) * n + (ci - 1);
            const std::uint8_t value = cells[idx];
            if (stamp[idx] != epoch) {
                stamp[idx] = epoch;
                out.push_back({Cell{ri, ci}, value});
            }
            if (value) break; // ray is blocked from here on
        }
    }
}

std::vector<std::pair<double, double>> ray_directions(int ray_count) {
    std::vector<std::pair<double, double>> dirs(static_cast<std::size_t>(ray_count));
    for (int k = 0; k < ray_count; ++k) {
        const double angle = 2.0 * M_PI * k / ray_count;
        dirs[static_cast<std::size_t>(k)] = {std::sin(angle), std::cos(angle)};
    }
    return dirs;
}

} // namespace

std::vector<Observation> sensor_scan(const BinaryGrid& truth, Cell pose, const SensorConfig& cfg) {
    cfg.validate();
    std::vector<std::uint64_t> stamp(truth.geometry().size(), 0);
    std::vector<Observation> out;
    scan_core(truth, pose, cfg, ray_directions(cfg.ray_count), stamp, 1, out);
    return out;
}

TernaryGrid update_local(const TernaryGrid& local, const std::vector<Observation>& observations) {
    TernaryGrid out = local;
    for (const Observation& obs : observations)
        out.set(obs.cell, obs.value ? Ternary::Obstacle : Ternary::Free);
    return out;
}

TernaryGrid fuse_into_main(const TernaryGrid& main, const TernaryGrid& local) {
    if (main.geometry() != local.geometry())
        throw std::invalid_argument("fuse_into_main: geometry mismatch");
    TernaryGrid out = main;
    for (std::size_t i = 0; i < out.values().size(); ++i) {
        const Ternary lv = local.at_index(i);
        if (lv != Ternary::Undecided) out.set_index(i, lv);
    }
    return out;
}

namespace {

// nearest undecided cell by Euclidean distance (ties: smaller (n1, n2) by
// scan order), optionally skipping cells close to waypoints other vehicles
// already serve
std::optional<Cell> nearest_undecided_cell(const TernaryGrid& local, Cell position,
                                           const std::vector<Cell>& avoid,
                                           double avoid_radius) {
    const GridGeometry& geom = local.geometry();
    bool found = false;
    Cell nearest;
    double best = 0.0;
    for (std::size_t i = 0; i < local.values().size(); ++i) {
        if (local.at_index(i) != Ternary::Undecided) continue;
        const Cell c = geom.cell_at(i);
        bool contended = false;
        for (const Cell& w : avoid)
            if (cell_distance(c, w) <= avoid_radius) {
                contended = true;
                break;
            }
        if (contended) continue;
        const double d = cell_distance(c, position);
        if (!found || d < best) {
            found = true;
            nearest = c;
            best = d;
        }
    }
    if (!found) return std::nullopt;
    return nearest;
}

Cell offset_and_clamp(const TernaryGrid& local, Cell nearest, std::pair<int, int> xi) {
    const GridGeometry& geom = local.geometry();
    Cell target{std::clamp(nearest.n1 + xi.first, 1, geom.n),
                std::clamp(nearest.n2 + xi.second, 1, geom.n)};
    if (local.at(target) == Ternary::Obstacle) target = nearest;
    return target;
}

} // namespace

std::optional<Cell> select_waypoint(const TernaryGrid& local, Cell position,
                                    std::pair<int, int> xi) {
    const std::optional<Cell> nearest = nearest_undecided_cell(local, position, {}, 0.0);
    if (!nearest) return std::nullopt;
    return offset_and_clamp(local, *nearest, xi);
}

std::optional<Cell> select_waypoint(const TernaryGrid& local, Cell position, SplitMix64& rng,
                                    int offset_range) {
    const int x1 = rng.next_int(-offset_range, offset_range);
    const int x2 = rng.next_int(-offset_range, offset_range);
    return select_waypoint(local, position, {x1, x2});
}

double coverage(const TernaryGrid& map) {
    const double size = static_cast<double>(map.geometry().size());
    return (size - static_cast<double>(map.undecided_count())) / size;
}

double complement_coverage(const TernaryGrid& map) {
    return static_cast<double>(map.undecided_count()) / static_cast<double>(map.geometry().size());
}

ErrorMetrics error_metrics(const TernaryGrid& estimated, const BinaryGrid& truth) {
    if (estimated.geometry() != truth.geometry())
        throw std::invalid_argument("error_metrics: geometry mismatch");
    ErrorMetrics out{BinaryGrid(truth.geometry()), BinaryGrid(truth.geometry()), 0.0};
    std::size_t errors = 0;
    for (std::size_t i = 0; i < truth.values().size(); ++i) {
        const Ternary est = estimated.at_index(i);
        const std::uint8_t real = truth.at_index(i);
        if (est == Ternary::Obstacle && real == 0) {
            out.fp_map.set_index(i, 1);
            ++errors;
        } else if (est == Ternary::Free && real == 1) {
            out.fn_map.set_index(i, 1);
            ++errors;
        }
    }
    out.p_e = static_cast<double>(errors) / static_cast<double>(truth.geometry().size());
    return out;
}

double convergence_time(const MappingTrace& trace, double epsilon) {
    for (const CoveragePoint& p : trace.coverage_series)
        if (p.coverage >= 1.0 - epsilon) return p.t;
    throw std::runtime_error("convergence_time: coverage never reached 1 - epsilon");
}

namespace {

// classification error of one decided cell against the truth
inline bool cell_in_error(Ternary est, std::uint8_t real) {
    return (est == Ternary::Obstacle && real == 0) || (est == Ternary::Free && real == 1);
}

struct MappingRun {
    const BinaryGrid& truth;
    const MappingParams& params;
    const SensorConfig& cfg;
    GridGeometry geom;
    TernaryGrid main;
    std::size_t undecided = 0;
    std::size_t errors = 0;
    std::vector<AvState> avs;
    SplitMix64 rng;
    MappingTrace trace;
    std::vector<std::pair<double, double>> dirs;
    std::vector<std::uint64_t> stamp;
    std::uint64_t epoch = 0;
    std::vector<Observation> obs;
    std::vector<std::uint8_t> visit_buf;

    MappingRun(const BinaryGrid& truth_, const MappingParams& params_, const SensorConfig& cfg_)
        : truth(truth_), params(params_), cfg(cfg_), geom(truth_.geometry()),
          main(geom, Ternary::Undecided), rng(params_.seed) {
        undecided = geom.size();
        dirs = ray_directions(cfg.ray_count);
        stamp.assign(geom.size(), 0);
        visit_buf.assign(geom.size(), 0);
    }

    void fuse_local(const TernaryGrid& local) {
        for (std::size_t i = 0; i < geom.size(); ++i) {
            const Ternary lv = local.at_index(i);
            if (lv == Ternary::Undecided) continue;
            const Ternary old = main.at_index(i);
            if (old == lv) continue;
            if (old == Ternary::Undecided) --undecided;
            const std::uint8_t real = truth.at_index(i);
            errors += static_cast<std::size_t>(cell_in_error(lv, real)) -
                      static_cast<std::size_t>(cell_in_error(old, real));
            main.set_index(i, lv);
        }
    }

    bool try_route(AvState& av, Cell target) {
        const BinaryGrid view = obstacles_from_ternary(av.local_map);
        PlanRequest req;
        req.obstacles = &view;
        req.start = av.position;
        req.stop = target;
        req.algorithm = Algorithm::OD;
        try {
            PlanResult res = plan(req);
            av.route = std::move(res.path);
            av.route_pos = 0;
            av.move_credit = 0.0;
            return true;
        } catch (const NoPathError&) {
            return false;
        } catch (const InvalidEndpointError&) {
            return false;
        }
    }

    // nearest undecided cell reachable over non-obstacle cells of the local
    // map, by Euclidean distance from the vehicle (ties: smaller (n1, n2))
    std::optional<Cell> nearest_reachable_undecided(const AvState& av) {
        std::fill(visit_buf.begin(), visit_buf.end(), 0);
        std::deque<std::size_t> queue;
        const std::size_t start = geom.index(av.position);
        visit_buf[start] = 1;
        queue.push_back(start);
        bool found = false;
        Cell best_cell;
        double best = 0.0;
        const int n = geom.n;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            const Cell cu = geom.cell_at(u);
            if (av.local_map.at_index(u) == Ternary::Undecided) {
                const double d = cell_distance(cu, av.position);
                if (!found || d < best || (d == best && cu < best_cell)) {
                    found = true;
                    best_cell = cu;
                    best = d;
                }
            }
            for (int d1 = -1; d1 <= 1; ++d1)
                for (int d2 = -1; d2 <= 1; ++d2) {
                    if (d1 == 0 && d2 == 0) continue;
                    const int v1 = cu.n1 + d1;
                    const int v2 = cu.n2 + d2;
                    if (v1 < 1 || v1 > n || v2 < 1 || v2 > n) continue;
                    const std::size_t v = static_cast<std::size_t>(v1 - 1) * n + (v2 - 1);
                    if (visit_buf[v] || av.local_map.at_index(v) == Ternary::Obstacle) continue;
                    visit_buf[v] = 1;
                    queue.push_back(v);
                }
        }
        if (!found) return std::nullopt;
        return best_cell;
    }

    // Waypoint selection for one vehicle: nearest undecided cell, skipping
    // cells inside the sensing disc of waypoints other vehicles already
    // serve; when that leaves no candidate the plain rule applies. Always
    // consumes two offset draws.
    std::optional<Cell> pick_waypoint(const AvState& av) {
        const int x1 = rng.next_int(-params.offset_range, params.offset_range);
        const int x2 = rng.next_int(-params.offset_range, params.offset_range);
        std::vector<Cell> avoid;
        for (const AvState& other : avs)
            if (other.id != av.id && other.current_waypoint)
                avoid.push_back(*other.current_waypoint);
        const double avoid_radius = cfg.rho_max / geom.delta;
        std::optional<Cell> nearest =
            nearest_undecided_cell(av.local_map, av.position, avoid, avoid_radius);
        if (!nearest) nearest = nearest_undecided_cell(av.local_map, av.position, {}, 0.0);
        if (!nearest) return std::nullopt;
        return offset_and_clamp(av.local_map, *nearest, {x1, x2});
    }

    // any undecided cell of the main map reachable from any vehicle?
    bool undecided_reachable_on_main() {
        const int n = geom.n;
        for (const AvState& av : avs) {
            std::fill(visit_buf.begin(), visit_buf.end(), 0);
            std::deque<std::size_t> queue;
            const std::size_t start = geom.index(av.position);
            visit_buf[start] = 1;
            queue.push_back(start);
            while (!queue.empty()) {
                const std::size_t u = queue.front();
                queue.pop_front();
                if (main.at_index(u) == Ternary::Undecided) return true;
                const Cell cu = geom.cell_at(u);
                for (int d1 = -1; d1 <= 1; ++d1)
                    for (int d2 = -1; d2 <= 1; ++d2) {
                        if (d1 == 0 && d2 == 0) continue;
                        const int v1 = cu.n1 + d1;
                        const int v2 = cu.n2 + d2;
                        if (v1 < 1 || v1 > n || v2 < 1 || v2 > n) continue;
                        const std::size_t v = static_cast<std::size_t>(v1 - 1) * n + (v2 - 1);
                        if (visit_buf[v] || main.at_index(v) == Ternary::Obstacle) continue;
                        visit_buf[v] = 1;
                        queue.push_back(v);
                    }
            }
        }
        return false;
    }

    MappingTrace run(const std::vector<Cell>& starts) {
        avs.reserve(static_cast<std::size_t>(params.n_av));
        for (int i = 0; i < params.n_av; ++i) {
            AvState av;
            av.id = i;
            av.position = starts[static_cast<std::size_t>(i)];
            av.local_map = TernaryGrid(geom, Ternary::Undecided);
            av.next_sync_time = rng.next_double() * params.sync_period;
            avs.push_back(std::move(av));
        }

        const double cells_per_step = params.speed * params.time_step / geom.delta;
        trace.coverage_series.push_back({0.0, cvg(), pe()});

        for (std::size_t step = 1;; ++step) {
            const double t_end = static_cast<double>(step) * params.time_step;
            if (t_end > params.max_time)
                throw std::runtime_error("run_mapping: exceeded max simulated time without "
                                         "reaching the termination condition");

            for (AvState& av : avs) {
                // (a)+(b) sense and fold into the local map
                obs.clear();
                scan_core(truth, av.position, cfg, dirs, stamp, ++epoch, obs);
                for (const Observation& o : obs)
                    av.local_map.set_index(geom.index(o.cell),
                                           o.value ? Ternary::Obstacle : Ternary::Free);

                // a newly decided obstacle on the remaining route forces a replan
                if (av.route) {
                    const auto& pts = av.route->points;
                    for (std::size_t m = av.route_pos + 1; m < pts.size(); ++m)
                        if (av.local_map.at_index(geom.index(pts[m])) == Ternary::Obstacle) {
                            av.route.reset();
                            break;
                        }
                }

                // (c) advance along the route; only decided-free cells may be
                // entered, so the vehicle waits in front of unknown cells
                // until a scan resolves them (adjacent cells always resolve
                // on the next scan)
                if (av.route) {
                    av.move_credit += cells_per_step;
                    const auto& pts = av.route->points;
                    bool obstacle_ahead = false;
                    while (av.route_pos + 1 < pts.size()) {
                        const Cell next = pts[av.route_pos + 1];
                        const Ternary ahead = av.local_map.at_index(geom.index(next));
                        if (ahead != Ternary::Free) {
                            obstacle_ahead = ahead == Ternary::Obstacle;
                            av.move_credit = 0.0; // waiting wastes the step
                            break;
                        }
                        const double len = step_length(pts[av.route_pos], next);
                        if (len > av.move_credit) break;
                        av.move_credit -= len;
                        ++av.route_pos;
                        av.position = next;
                    }
                    if (obstacle_ahead) {
                        av.route.reset();
                    } else if (av.route_pos + 1 == pts.size()) { // waypoint served
                        av.route.reset();
                        av.current_waypoint.reset();
                    }
                }

                // (d) pick a waypoint and plan a route when idle
                if (!av.route) {
                    std::optional<Cell> target = av.current_waypoint;
                    if (target && av.local_map.at(*target) == Ternary::Obstacle) target.reset();
                    if (!target) target = pick_waypoint(av);
                    bool planned = false;
                    if (target && try_route(av, *target)) planned = true;
                    if (!planned) {
                        const std::optional<Cell> fallback = nearest_reachable_undecided(av);
                        if (fallback && try_route(av, *fallback)) {
                            planned = true;
                            target = fallback;
                        }
                    }
                    if (planned) {
                        av.current_waypoint = target;
                        trace.waypoint_log.push_back({t_end, av.id, *target});
                    } else {
                        av.current_waypoint.reset();
                    }
                }

                // (e) scheduled synchronizations with the main map
                while (av.next_sync_time <= t_end) {
                    if (params.record_sync_log)
                        trace.sync_log.push_back({av.next_sync_time, av.id, av.local_map});
                    fuse_local(av.local_map);
                    av.local_map = main;
                    av.next_sync_time += params.sync_period;
                }
            }

            trace.coverage_series.push_back({t_end, cvg(), pe()});
            if (cvg() >= 1.0 - params.epsilon) {
                trace.convergence_time = t_end;
                break;
            }

            bool all_idle = true;
            for (const AvState& av : avs)
                if (av.route) {
                    all_idle = false;
                    break;
                }
            if (all_idle && !undecided_reachable_on_main()) {
                trace.terminated_blocked = true;
                break;
            }
        }

        trace.final_map = std::move(main);
        return std::move(trace);
    }

    double cvg() const {
        const double size = static_cast<double>(geom.size());
        return (size - static_cast<double>(undecided)) / size;
    }
    double pe() const {
        return static_cast<double>(errors) / static_cast<double>(geom.size());
    }
};

} // namespace

MappingTrace run_mapping(const BinaryGrid& truth, const MappingParams& params,
                         const SensorConfig& cfg, const std::vector<Cell>& starts) {
    params.validate();
    cfg.validate();
    if (static_cast<int>(starts.size()) != params.n_av)
        throw std::invalid_argument("run_mapping: expected " + std::to_string(params.n_av) +
                                    " start cells, got " + std::to_string(starts.size()));
    for (const Cell& s : starts) {
        if (!truth.geometry().contains(s))
            throw std::invalid_argument("run_mapping: start cell outside grid");
        if (truth.at(s) != 0)
            throw std::invalid_argument("run_mapping: start cell lies on an obstacle");
    }

    MappingRun sim(truth, params, cfg);
    return sim.run(starts);
}

} // namespace gridnav
