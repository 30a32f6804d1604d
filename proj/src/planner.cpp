#include "gridnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace gridnav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 8-connected neighborhood in lexicographic (dn1, dn2) order
constexpr int kOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                {0, 1},   {1, -1}, {1, 0},  {1, 1}};

double weight_at(const RadioWeightMap* radio, std::size_t idx) {
    return radio ? radio->at_index(idx) : 0.0;
}

} // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::OD: return "od";
        case Algorithm::WD: return "wd";
        case Algorithm::OA: return "oa";
        case Algorithm::WA: return "wa";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "od") return Algorithm::OD;
    if (name == "wd") return Algorithm::WD;
    if (name == "oa") return Algorithm::OA;
    if (name == "wa") return Algorithm::WA;
    throw std::invalid_argument("unknown algorithm '" + name + "' (expected od, wd, oa or wa)");
}

double f1(const DiscretePath& path) {
    path.validate();
    std::size_t straight = 0;
    std::size_t diagonal = 0;
    for (std::size_t m = 1; m < path.points.size(); ++m) {
        const Cell& a = path.points[m - 1];
        const Cell& b = path.points[m];
        if (a.n1 != b.n1 && a.n2 != b.n2) ++diagonal;
        else ++straight;
    }
    return static_cast<double>(straight) + static_cast<double>(diagonal) * kSqrt2;
}

double f2(const DiscretePath& path, const RadioWeightMap& radio) {
    path.validate();
    double straight_weight = 0.0;
    double diagonal_weight = 0.0;
    for (std::size_t m = 1; m < path.points.size(); ++m) {
        const Cell& a = path.points[m - 1];
        const Cell& b = path.points[m];
        const double w = radio.at(b);
        if (a.n1 != b.n1 && a.n2 != b.n2) diagonal_weight += w;
        else straight_weight += w;
    }
    return straight_weight + diagonal_weight * kSqrt2;
}

double combined_cost(const DiscretePath& path, const RadioWeightMap& radio, double alpha) {
    return f1(path) - alpha * f2(path, radio);
}

double step_cost(Algorithm algorithm, const RadioWeightMap* radio, double alpha, Cell from,
                 Cell to) {
    const double len = step_length(from, to); // throws for non-adjacent cells
    if (algorithm == Algorithm::OD || algorithm == Algorithm::OA) return len;
    const double w = radio ? radio->at(to) : 0.0;
    return (1.0 - alpha * w) * len;
}

double heuristic(Algorithm algorithm, const RadioWeightMap* radio, double alpha, Cell cell,
                 Cell stop) {
    switch (algorithm) {
        case Algorithm::OD:
        case Algorithm::WD: return 0.0;
        case Algorithm::OA: return cell_distance(cell, stop);
        case Algorithm::WA: {
            const double w = radio ? radio->at(cell) : 0.0;
            return (1.0 - alpha * w) * cell_distance(cell, stop);
        }
    }
    return 0.0;
}

namespace {

struct HeapEntry {
    double f;
    double g;
    std::int32_t idx;
};

struct HeapGreater {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        return a.idx > b.idx; // row-major index order == lexicographic (n1, n2)
    }
};

// True when `cell_idx` already lies on the predecessor chain ending at
// `from_idx`; relaxing through it would close a cycle. Only consulted in the
// negative-cost regime.
bool on_pred_chain(const std::vector<std::int32_t>& pred, std::int32_t from_idx,
                   std::int32_t cell_idx) {
    for (std::int32_t i = from_idx; i >= 0; i = pred[static_cast<std::size_t>(i)])
        if (i == cell_idx) return true;
    return false;
}

} // namespace

PlanResult plan(const PlanRequest& request) {
    if (request.obstacles == nullptr) throw std::invalid_argument("plan: obstacle map is required");
    const BinaryGrid& obstacles = *request.obstacles;
    const GridGeometry geom = obstacles.geometry();
    if (request.radio != nullptr && request.radio->geometry() != geom)
        throw std::invalid_argument("plan: radio map geometry does not match obstacle map");
    if (!(request.alpha >= 0.0)) throw std::invalid_argument("plan: alpha must be >= 0");

    for (const Cell* c : {&request.start, &request.stop}) {
        if (!geom.contains(*c))
            throw InvalidEndpointError("endpoint (" + std::to_string(c->n1) + "," +
                                       std::to_string(c->n2) + ") outside grid");
        if (obstacles.at(*c) != 0)
            throw InvalidEndpointError("endpoint (" + std::to_string(c->n1) + "," +
                                       std::to_string(c->n2) + ") lies on an obstacle");
    }

    const Algorithm algo = request.algorithm;
    const bool weighted = algo == Algorithm::WD || algo == Algorithm::WA;
    const bool negative_costs =
        weighted && request.radio != nullptr && request.alpha * request.radio->max_value() > 1.0;
    // WD in the negative regime must drain the queue to reach its fixed
    // point; everything else may stop as soon as the stop cell is expanded.
    const bool early_exit = !(negative_costs && algo == Algorithm::WD);
    const bool use_heuristic = algo == Algorithm::OA || algo == Algorithm::WA;
    // Only the Dijkstra variants re-open closed cells; under WA's
    // non-admissible heuristic re-opening can re-expand exponentially, so
    // the A* variants settle every cell at most once.
    const bool allow_reopen = algo == Algorithm::OD || algo == Algorithm::WD;

    const int n = geom.n;
    const std::size_t cells = geom.size();
    const std::int32_t start_idx = static_cast<std::int32_t>(geom.index(request.start));
    const std::int32_t stop_idx = static_cast<std::int32_t>(geom.index(request.stop));
    const std::uint8_t* blocked = obstacles.values().data();

    std::vector<double> label(cells, kInf);
    std::vector<std::int32_t> pred(cells, -1);
    std::vector<std::uint8_t> closed(cells, 0);

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapGreater> open;
    label[static_cast<std::size_t>(start_idx)] = 0.0;
    open.push({heuristic(algo, request.radio, request.alpha, request.start, request.stop), 0.0,
               start_idx});

    PlanResult result;
    bool reached = false;

    while (!open.empty()) {
        const HeapEntry top = open.top();
        open.pop();
        const std::size_t u = static_cast<std::size_t>(top.idx);
        if (top.g != label[u]) continue; // stale entry
        ++result.expanded_nodes;
        if (closed[u]) ++result.reexpansions;
        closed[u] = 1;
        if (early_exit && top.idx == stop_idx) {
            reached = true;
            break;
        }

        const int u1 = top.idx / n + 1;
        const int u2 = top.idx % n + 1;
        for (const auto& off : kOffsets) {
            const int v1 = u1 + off[0];
            const int v2 = u2 + off[1];
            if (v1 < 1 || v1 > n || v2 < 1 || v2 > n) continue;
            const std::size_t v = static_cast<std::size_t>(v1 - 1) * n + (v2 - 1);
            if (blocked[v]) continue;
            const double len = (off[0] != 0 && off[1] != 0) ? kSqrt2 : 1.0;
            const double cost =
                weighted ? (1.0 - request.alpha * weight_at(request.radio, v)) * len : len;
            const double g_new = top.g + cost;
            if (g_new < label[v]) {
                if (closed[v] && !allow_reopen) continue;
                if (negative_costs && on_pred_chain(pred, top.idx, static_cast<std::int32_t>(v)))
                    continue;
                label[v] = g_new;
                pred[v] = top.idx;
                const double h = use_heuristic ? heuristic(algo, request.radio, request.alpha,
                                                           Cell{v1, v2}, request.stop)
                                               : 0.0;
                open.push({g_new + h, g_new, static_cast<std::int32_t>(v)});
            }
        }
    }

    if (!reached && label[static_cast<std::size_t>(stop_idx)] == kInf)
        throw NoPathError("no feasible path from (" + std::to_string(request.start.n1) + "," +
                          std::to_string(request.start.n2) + ") to (" +
                          std::to_string(request.stop.n1) + "," + std::to_string(request.stop.n2) +
                          ")");

    for (std::int32_t i = stop_idx;; i = pred[static_cast<std::size_t>(i)]) {
        result.path.points.push_back(geom.cell_at(static_cast<std::size_t>(i)));
        if (i == start_idx) break;
    }
    std::reverse(result.path.points.begin(), result.path.points.end());

    result.distance = result.path.points.size() > 1 ? f1(result.path) : 0.0;
    result.radio_weight =
        request.radio != nullptr && result.path.points.size() > 1 ? f2(result.path, *request.radio)
                                                                  : 0.0;
    result.combined_cost = result.distance - request.alpha * result.radio_weight;
    return result;
}

namespace {

struct OracleContext {
    const BinaryGrid* obstacles = nullptr;
    const RadioWeightMap* radio = nullptr;
    double alpha = 0.0;
    std::int32_t stop_idx = 0;
    int n = 0;
    double bound_factor = 1.0; // 1 - alpha * max(R)
    std::size_t free_cells = 0;
    std::vector<std::uint8_t> visited;
    std::vector<Cell> path;
    double best = kInf;
    std::vector<Cell> best_path;
    std::size_t steps = 0;
};

// admissible lower bound on the cost of completing the path from `cell`
double remaining_bound(const OracleContext& ctx, Cell cell, std::size_t visited_count) {
    const Cell stop = ctx.obstacles->geometry().cell_at(static_cast<std::size_t>(ctx.stop_idx));
    if (ctx.bound_factor >= 0.0) return ctx.bound_factor * cell_distance(cell, stop);
    // negative regime: every future step costs at least bound_factor * sqrt(2)
    return ctx.bound_factor * kSqrt2 * static_cast<double>(ctx.free_cells - visited_count);
}

void oracle_dfs(OracleContext& ctx, Cell cell, double g, std::size_t visited_count) {
    if (++ctx.steps > 200'000'000)
        throw std::runtime_error("exhaustive_optimal_path: search budget exceeded");
    const GridGeometry& geom = ctx.obstacles->geometry();
    const std::size_t idx = geom.index(cell);
    if (static_cast<std::int32_t>(idx) == ctx.stop_idx) {
        if (g < ctx.best) {
            ctx.best = g;
            ctx.best_path = ctx.path;
        }
        return;
    }

    // explore the most promising neighbor first so pruning bites early
    struct Cand {
        double key;
        Cell cell;
        double cost;
    };
    Cand cands[8];
    int n_cands = 0;
    const Cell stop = geom.cell_at(static_cast<std::size_t>(ctx.stop_idx));
    for (const auto& off : kOffsets) {
        const Cell nb{cell.n1 + off[0], cell.n2 + off[1]};
        if (!geom.contains(nb)) continue;
        const std::size_t nb_idx = geom.index(nb);
        if (ctx.obstacles->at_index(nb_idx) || ctx.visited[nb_idx]) continue;
        const double len = (off[0] != 0 && off[1] != 0) ? kSqrt2 : 1.0;
        const double w = ctx.radio ? ctx.radio->at_index(nb_idx) : 0.0;
        cands[n_cands++] = {cell_distance(nb, stop), nb, (1.0 - ctx.alpha * w) * len};
    }
    for (int i = 1; i < n_cands; ++i) {
        const Cand key = cands[i];
        int j = i - 1;
        for (; j >= 0; --j) {
            const bool after = cands[j].key > key.key ||
                               (cands[j].key == key.key && geom.index(cands[j].cell) > geom.index(key.cell));
            if (!after) break;
            cands[j + 1] = cands[j];
        }
        cands[j + 1] = key;
    }

    for (int i = 0; i < n_cands; ++i) {
        const double g_next = g + cands[i].cost;
        if (g_next + remaining_bound(ctx, cands[i].cell, visited_count + 1) >= ctx.best - 1e-12)
            continue;
        const std::size_t nb_idx = geom.index(cands[i].cell);
        ctx.visited[nb_idx] = 1;
        ctx.path.push_back(cands[i].cell);
        oracle_dfs(ctx, cands[i].cell, g_next, visited_count + 1);
        ctx.path.pop_back();
        ctx.visited[nb_idx] = 0;
    }
}

} // namespace

OracleResult exhaustive_optimal_path(const BinaryGrid& obstacles, const RadioWeightMap* radio,
                                     double alpha, Cell start, Cell stop,
                                     std::size_t max_cells) {
    const GridGeometry geom = obstacles.geometry();
    if (geom.size() > max_cells)
        throw std::invalid_argument("exhaustive_optimal_path: grid has " +
                                    std::to_string(geom.size()) + " cells, limit is " +
                                    std::to_string(max_cells));
    if (radio != nullptr && radio->geometry() != geom)
        throw std::invalid_argument("exhaustive_optimal_path: radio map geometry mismatch");
    for (const Cell* c : {&start, &stop}) {
        if (!geom.contains(*c)) throw InvalidEndpointError("oracle endpoint outside grid");
        if (obstacles.at(*c) != 0) throw InvalidEndpointError("oracle endpoint on an obstacle");
    }

    OracleContext ctx;
    ctx.obstacles = &obstacles;
    ctx.radio = radio;
    ctx.alpha = alpha;
    ctx.stop_idx = static_cast<std::int32_t>(geom.index(stop));
    ctx.n = geom.n;
    ctx.best = kInf;
    ctx.bound_factor = 1.0 - alpha * (radio ? radio->max_value() : 0.0);
    ctx.free_cells = geom.size() - obstacles.obstacle_count();
    ctx.visited.assign(geom.size(), 0);
    ctx.visited[geom.index(start)] = 1;
    ctx.path.push_back(start);
    oracle_dfs(ctx, start, 0.0, 1);

    if (ctx.best == kInf)
        throw NoPathError("exhaustive_optimal_path: no feasible path between the endpoints");

    OracleResult out;
    out.path.points = std::move(ctx.best_path);
    out.combined = out.path.points.size() > 1
                       ? (radio ? combined_cost(out.path, *radio, alpha) : f1(out.path))
                       : 0.0;
    return out;
}

} // namespace gridnav
