#include "gridnav/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace gridnav {

void BenchmarkSpec::validate() const {
    if (obstacles == nullptr) throw std::invalid_argument("benchmark: obstacle map is required");
    if (trials < 1) throw std::invalid_argument("benchmark: trials must be >= 1");
    if (weight_kinds.empty()) throw std::invalid_argument("benchmark: no weight kinds");
    if (alpha_grid.empty()) throw std::invalid_argument("benchmark: empty alpha grid");
    if (algorithms.empty()) throw std::invalid_argument("benchmark: no algorithms");
    if (std::find(algorithms.begin(), algorithms.end(), baseline) == algorithms.end())
        throw std::invalid_argument("benchmark: baseline algorithm must be in the algorithm set");
    if (baseline != Algorithm::OD && baseline != Algorithm::OA)
        throw std::invalid_argument("benchmark: baseline must be od or oa");
    for (const WeightKind& w : weight_kinds) w.validate();
    for (double a : alpha_grid)
        if (!(a >= 0.0)) throw std::invalid_argument("benchmark: alpha values must be >= 0");
}

namespace {

bool connected(const BinaryGrid& obstacles, Cell a, Cell b) {
    const GridGeometry& geom = obstacles.geometry();
    const int n = geom.n;
    std::vector<std::uint8_t> seen(geom.size(), 0);
    std::deque<std::size_t> queue;
    seen[geom.index(a)] = 1;
    queue.push_back(geom.index(a));
    const std::size_t goal = geom.index(b);
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        if (u == goal) return true;
        const int u1 = static_cast<int>(u) / n + 1;
        const int u2 = static_cast<int>(u) % n + 1;
        for (int d1 = -1; d1 <= 1; ++d1)
            for (int d2 = -1; d2 <= 1; ++d2) {
                if (d1 == 0 && d2 == 0) continue;
                const int v1 = u1 + d1;
                const int v2 = u2 + d2;
                if (v1 < 1 || v1 > n || v2 < 1 || v2 > n) continue;
                const std::size_t v = static_cast<std::size_t>(v1 - 1) * n + (v2 - 1);
                if (seen[v] || obstacles.at_index(v)) continue;
                seen[v] = 1;
                queue.push_back(v);
            }
    }
    return false;
}

} // namespace

std::pair<Cell, Cell> sample_endpoints(const BinaryGrid& obstacles, SplitMix64& rng) {
    const GridGeometry& geom = obstacles.geometry();
    std::vector<std::size_t> free_cells;
    free_cells.reserve(geom.size());
    for (std::size_t i = 0; i < geom.size(); ++i)
        if (!obstacles.at_index(i)) free_cells.push_back(i);
    if (free_cells.size() < 2)
        throw std::runtime_error("sample_endpoints: map has fewer than two free cells");

    constexpr int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const Cell a = geom.cell_at(free_cells[rng.next_below(free_cells.size())]);
        const Cell b = geom.cell_at(free_cells[rng.next_below(free_cells.size())]);
        if (a == b) continue;
        if (connected(obstacles, a, b)) return {a, b};
    }
    throw std::runtime_error("sample_endpoints: no mutually reachable free pair found");
}

double percent_change(double value, double baseline) {
    if (!(baseline > 0.0))
        throw std::invalid_argument("percent_change: baseline must be positive");
    return 100.0 * (value - baseline) / baseline;
}

namespace {

struct TrialRecord {
    double distance = 0.0;
    double radio = 0.0;
    double runtime_ms = 0.0;
    double expanded = 0.0;
};

double timed_plan(const PlanRequest& req, PlanResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = plan(req);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec) {
    spec.validate();
    const BinaryGrid& obstacles = *spec.obstacles;
    const GridGeometry geom = obstacles.geometry();
    SplitMix64 rng(spec.seed);

    std::vector<RadioWeightMap> radio_maps;
    radio_maps.reserve(spec.weight_kinds.size());
    for (const WeightKind& kind : spec.weight_kinds)
        radio_maps.push_back(build_radio_map(spec.aps, kind, geom));

    const std::size_t n_w = spec.weight_kinds.size();
    const std::size_t n_a = spec.algorithms.size();
    const std::size_t n_alpha = spec.alpha_grid.size();
    const std::size_t n_configs = n_w * n_a * n_alpha;
    const auto config_index = [&](std::size_t w, std::size_t a, std::size_t al) {
        return (w * n_a + a) * n_alpha + al;
    };

    const std::size_t trials = static_cast<std::size_t>(spec.trials);
    std::vector<std::uint8_t> failed(trials, 0);
    std::vector<TrialRecord> records(trials * n_configs);
    // baseline bookkeeping, per trial (+ per weight for the radio term)
    std::vector<double> base_distance(trials, 0.0);
    std::vector<double> base_runtime(trials, 0.0);
    std::vector<double> base_radio(trials * n_w, 0.0);

    for (std::size_t t = 0; t < trials; ++t) {
        const auto [start, stop] = sample_endpoints(obstacles, rng);
        try {
            PlanRequest base_req;
            base_req.obstacles = &obstacles;
            base_req.start = start;
            base_req.stop = stop;
            base_req.algorithm = spec.baseline;
            PlanResult base_res;
            base_runtime[t] = timed_plan(base_req, base_res);
            base_distance[t] = base_res.distance;
            for (std::size_t w = 0; w < n_w; ++w)
                base_radio[t * n_w + w] = f2(base_res.path, radio_maps[w]);

            // OD / OA ignore both the weight map and alpha: one run covers
            // every row they appear in
            std::vector<PlanResult> unweighted(n_a);
            std::vector<double> unweighted_ms(n_a, -1.0);

            for (std::size_t a = 0; a < n_a; ++a) {
                const Algorithm algo = spec.algorithms[a];
                if (algo == Algorithm::OD || algo == Algorithm::OA) {
                    if (algo == spec.baseline) {
                        unweighted[a] = base_res;
                        unweighted_ms[a] = base_runtime[t];
                    } else {
                        PlanRequest req = base_req;
                        req.algorithm = algo;
                        unweighted_ms[a] = timed_plan(req, unweighted[a]);
                    }
                }
            }

            for (std::size_t w = 0; w < n_w; ++w)
                for (std::size_t a = 0; a < n_a; ++a) {
                    const Algorithm algo = spec.algorithms[a];
                    for (std::size_t al = 0; al < n_alpha; ++al) {
                        TrialRecord& rec = records[t * n_configs + config_index(w, a, al)];
                        if (algo == Algorithm::OD || algo == Algorithm::OA) {
                            rec.distance = unweighted[a].distance;
                            rec.radio = f2(unweighted[a].path, radio_maps[w]);
                            rec.runtime_ms = unweighted_ms[a];
                            rec.expanded = static_cast<double>(unweighted[a].expanded_nodes);
                        } else {
                            PlanRequest req;
                            req.obstacles = &obstacles;
                            req.radio = &radio_maps[w];
                            req.start = start;
                            req.stop = stop;
                            req.alpha = spec.alpha_grid[al];
                            req.algorithm = algo;
                            PlanResult res;
                            rec.runtime_ms = timed_plan(req, res);
                            rec.distance = res.distance;
                            rec.radio = res.radio_weight;
                            rec.expanded = static_cast<double>(res.expanded_nodes);
                        }
                    }
                }
        } catch (const NoPathError&) {
            failed[t] = 1;
        } catch (const InvalidEndpointError&) {
            failed[t] = 1;
        }
    }

    std::vector<BenchmarkRow> rows;
    rows.reserve(n_configs);
    for (std::size_t w = 0; w < n_w; ++w)
        for (std::size_t a = 0; a < n_a; ++a)
            for (std::size_t al = 0; al < n_alpha; ++al) {
                BenchmarkRow row;
                row.weight = spec.weight_kinds[w];
                row.algorithm = spec.algorithms[a];
                row.alpha = spec.alpha_grid[al];

                double sum_dist = 0.0, sum_radio = 0.0, sum_comb = 0.0;
                double sum_ms = 0.0, sum_base_ms = 0.0, sum_comb_raw = 0.0, sum_exp = 0.0;
                int used = 0;
                for (std::size_t t = 0; t < trials; ++t) {
                    if (failed[t]) continue;
                    const double g_base =
                        base_distance[t] - row.alpha * base_radio[t * n_w + w];
                    // skip trials whose baseline denominators are undefined
                    if (!(base_radio[t * n_w + w] > 0.0) || !(g_base > 0.0) ||
                        !(base_distance[t] > 0.0))
                        continue;
                    const TrialRecord& rec = records[t * n_configs + config_index(w, a, al)];
                    const double g = rec.distance - row.alpha * rec.radio;
                    sum_dist += percent_change(rec.distance, base_distance[t]);
                    sum_radio += percent_change(rec.radio, base_radio[t * n_w + w]);
                    sum_comb += -percent_change(g, g_base);
                    sum_ms += rec.runtime_ms;
                    sum_base_ms += base_runtime[t];
                    sum_comb_raw += g;
                    sum_exp += rec.expanded;
                    ++used;
                }
                row.trials_used = used;
                if (used > 0) {
                    row.distance_increase_pct = sum_dist / used;
                    row.radio_increase_pct = sum_radio / used;
                    row.combined_decrease_pct = sum_comb / used;
                    row.mean_runtime_ms = sum_ms / used;
                    row.mean_combined = sum_comb_raw / used;
                    row.mean_expanded = sum_exp / used;
                    if (sum_base_ms > 0.0)
                        row.runtime_increase_pct = percent_change(sum_ms / used, sum_base_ms / used);
                }
                rows.push_back(row);
            }

    std::sort(rows.begin(), rows.end(), [](const BenchmarkRow& x, const BenchmarkRow& y) {
        if (x.weight.law != y.weight.law) return static_cast<int>(x.weight.law) < static_cast<int>(y.weight.law);
        if (x.algorithm != y.algorithm) return static_cast<int>(x.algorithm) < static_cast<int>(y.algorithm);
        return x.alpha < y.alpha;
    });
    return rows;
}

} // namespace gridnav
