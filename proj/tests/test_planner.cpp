#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <deque>

#include "gridnav/planner.hpp"
#include "gridnav/raster.hpp"
#include "gridnav/rng.hpp"

using namespace gridnav;

namespace {

BinaryGrid empty_grid(int n) { return BinaryGrid(GridGeometry{n, 1.0}); }

// test-local connectivity check (BFS), independent of the planner
bool reachable(const BinaryGrid& g, Cell a, Cell b) {
    const GridGeometry& geom = g.geometry();
    std::vector<std::uint8_t> seen(geom.size(), 0);
    std::deque<Cell> q{a};
    seen[geom.index(a)] = 1;
    while (!q.empty()) {
        const Cell u = q.front();
        q.pop_front();
        if (u == b) return true;
        for (int d1 = -1; d1 <= 1; ++d1)
            for (int d2 = -1; d2 <= 1; ++d2) {
                const Cell v{u.n1 + d1, u.n2 + d2};
                if ((d1 == 0 && d2 == 0) || !geom.contains(v)) continue;
                if (seen[geom.index(v)] || g.at(v)) continue;
                seen[geom.index(v)] = 1;
                q.push_back(v);
            }
    }
    return false;
}

struct RandomInstance {
    BinaryGrid grid;
    Cell start;
    Cell stop;
};

RandomInstance random_instance(int n, double density, SplitMix64& rng) {
    for (;;) {
        BinaryGrid grid(GridGeometry{n, 1.0});
        for (std::size_t i = 0; i < grid.values().size(); ++i)
            if (rng.next_double() < density) grid.set_index(i, 1);
        std::vector<Cell> free;
        for (std::size_t i = 0; i < grid.values().size(); ++i)
            if (!grid.at_index(i)) free.push_back(grid.geometry().cell_at(i));
        if (free.size() < 2) continue;
        const Cell start = free[rng.next_below(free.size())];
        const Cell stop = free[rng.next_below(free.size())];
        if (start == stop || !reachable(grid, start, stop)) continue;
        return {std::move(grid), start, stop};
    }
}

RadioWeightMap uniform_radio(const GridGeometry& geom, double w) {
    return RadioWeightMap(geom, std::vector<double>(geom.size(), w));
}

PlanResult run(const BinaryGrid& g, const RadioWeightMap* radio, Cell start, Cell stop,
               double alpha, Algorithm algo) {
    PlanRequest req;
    req.obstacles = &g;
    req.radio = radio;
    req.start = start;
    req.stop = stop;
    req.alpha = alpha;
    req.algorithm = algo;
    return plan(req);
}

} // namespace

TEST_CASE("f1 sums step lengths") {
    CHECK(f1(DiscretePath{{{1, 1}, {2, 2}, {2, 3}}}) == kSqrt2 + 1.0);
    CHECK(f1(DiscretePath{{{3, 3}}}) == 0.0);
    DiscretePath straight;
    for (int j = 1; j <= 11; ++j) straight.points.push_back({1, j});
    CHECK(f1(straight) == 10.0);
}

TEST_CASE("f2 weights each step by the arriving cell") {
    const GridGeometry geom{5, 1.0};
    const DiscretePath path{{{1, 1}, {2, 2}, {2, 3}}};
    CHECK(f2(path, uniform_radio(geom, 1.0)) == f1(path));
    CHECK(f2(path, uniform_radio(geom, 0.0)) == 0.0);

    std::vector<double> w(geom.size(), 0.0);
    w[geom.index({2, 3})] = 0.5; // single weighted cell entered by a straight step
    const RadioWeightMap spot(geom, std::move(w));
    CHECK(f2(path, spot) == 0.5);
}

TEST_CASE("combined cost reductions") {
    const GridGeometry geom{5, 1.0};
    const DiscretePath path{{{1, 1}, {2, 2}, {3, 2}, {3, 3}}};
    const RadioWeightMap ones = uniform_radio(geom, 1.0);
    CHECK(combined_cost(path, ones, 0.0) == f1(path));
    CHECK(combined_cost(path, ones, 1.0) == 0.0);  // every step factor vanishes
    CHECK(combined_cost(path, ones, 2.0) == -f1(path));
}

TEST_CASE("step cost per algorithm") {
    const GridGeometry geom{5, 1.0};
    const RadioWeightMap half = uniform_radio(geom, 0.5);
    const RadioWeightMap ones = uniform_radio(geom, 1.0);
    CHECK(step_cost(Algorithm::OD, nullptr, 0.0, {1, 1}, {2, 2}) == kSqrt2);
    CHECK(step_cost(Algorithm::WD, &half, 1.0, {1, 1}, {2, 2}) ==
          doctest::Approx(0.5 * kSqrt2).epsilon(1e-15));
    CHECK(step_cost(Algorithm::WD, &ones, 4.0, {1, 1}, {1, 2}) == -3.0);
    CHECK_THROWS_AS(step_cost(Algorithm::OD, nullptr, 0.0, {1, 1}, {1, 3}),
                    std::invalid_argument);
}

TEST_CASE("heuristic per algorithm") {
    const GridGeometry geom{9, 1.0};
    const RadioWeightMap zeros = uniform_radio(geom, 0.0);
    const RadioWeightMap ones = uniform_radio(geom, 1.0);
    CHECK(heuristic(Algorithm::OD, nullptr, 0.0, {1, 1}, {5, 5}) == 0.0);
    CHECK(heuristic(Algorithm::WD, &ones, 1.0, {1, 1}, {5, 5}) == 0.0);
    CHECK(heuristic(Algorithm::OA, nullptr, 0.0, {5, 5}, {5, 5}) == 0.0);
    CHECK(heuristic(Algorithm::WA, &zeros, 1.0, {1, 1}, {5, 5}) ==
          heuristic(Algorithm::OA, nullptr, 0.0, {1, 1}, {5, 5}));
    CHECK(heuristic(Algorithm::WA, &ones, 2.0, {1, 1}, {1, 6}) == -5.0);
}

TEST_CASE("OD crosses an empty 3x3 grid on the diagonal") {
    const BinaryGrid g = empty_grid(3);
    const PlanResult r = run(g, nullptr, {1, 1}, {3, 3}, 0.0, Algorithm::OD);
    CHECK(r.distance == 2.0 * kSqrt2);
    CHECK(r.path.points.front() == Cell{1, 1});
    CHECK(r.path.points.back() == Cell{3, 3});
    CHECK(r.combined_cost == r.distance);
}

TEST_CASE("OD routes around a center obstacle, matching the exhaustive oracle") {
    BinaryGrid g = empty_grid(3);
    g.set({2, 2}, 1);
    const PlanResult r = run(g, nullptr, {1, 1}, {3, 3}, 0.0, Algorithm::OD);
    const OracleResult o = exhaustive_optimal_path(g, nullptr, 0.0, {1, 1}, {3, 3});
    CHECK(r.distance == doctest::Approx(o.combined).epsilon(1e-12));
    CHECK(r.distance == doctest::Approx(2.0 + kSqrt2).epsilon(1e-12));
}

TEST_CASE("unreachable stop raises NoPath, obstacle endpoints raise InvalidEndpoint") {
    BinaryGrid g = empty_grid(4);
    // wall the start into its corner
    g.set({1, 2}, 1);
    g.set({2, 2}, 1);
    g.set({2, 1}, 1);
    CHECK_THROWS_AS(run(g, nullptr, {1, 1}, {4, 4}, 0.0, Algorithm::OD), NoPathError);
    CHECK_THROWS_AS(run(g, nullptr, {2, 2}, {4, 4}, 0.0, Algorithm::OD), InvalidEndpointError);
    CHECK_THROWS_AS(run(g, nullptr, {1, 1}, {9, 9}, 0.0, Algorithm::OD), InvalidEndpointError);
}

TEST_CASE("oracle basics") {
    const BinaryGrid g2 = empty_grid(2);
    const OracleResult o = exhaustive_optimal_path(g2, nullptr, 0.0, {1, 1}, {2, 2});
    CHECK(o.combined == kSqrt2);

    BinaryGrid blocked = empty_grid(3);
    blocked.set({1, 2}, 1);
    blocked.set({2, 2}, 1);
    blocked.set({3, 2}, 1);
    CHECK_THROWS_AS(exhaustive_optimal_path(blocked, nullptr, 0.0, {1, 1}, {1, 3}), NoPathError);

    CHECK_THROWS_AS(exhaustive_optimal_path(empty_grid(9), nullptr, 0.0, {1, 1}, {9, 9}),
                    std::invalid_argument); // 81 cells > default 64 limit
    CHECK_NOTHROW(exhaustive_optimal_path(empty_grid(9), nullptr, 0.0, {1, 1}, {9, 9}, 81));
}

TEST_CASE("returned paths satisfy the feasibility constraints") {
    SplitMix64 rng(101);
    for (int i = 0; i < 25; ++i) {
        const RandomInstance inst = random_instance(10, 0.25, rng);
        const RadioWeightMap radio =
            build_radio_map({AccessPoint{{5, 5}, 4.0}}, WeightKind{WeightLaw::Tent, 1.0, 0.2},
                            inst.grid.geometry());
        for (Algorithm algo : {Algorithm::OD, Algorithm::WD, Algorithm::OA, Algorithm::WA}) {
            const PlanResult r = run(inst.grid, &radio, inst.start, inst.stop, 0.5, algo);
            CHECK(r.path.points.front() == inst.start);
            CHECK(r.path.points.back() == inst.stop);
            CHECK_NOTHROW(r.path.validate()); // all steps pixel-adjacent
            // zero inner product between the path map and the obstacle map
            const PathMap pm = path_map(r.path, inst.grid.geometry());
            double inner = 0.0;
            for (const auto& [cell, len] : pm.step_length)
                inner += len * inst.grid.at(cell);
            CHECK(inner == 0.0);
        }
    }
}

TEST_CASE("alpha=0 makes all four algorithms report the OD-optimal length exactly") {
    SplitMix64 rng(202);
    for (int i = 0; i < 20; ++i) {
        const RandomInstance inst = random_instance(12, 0.2, rng);
        const RadioWeightMap radio =
            build_radio_map({AccessPoint{{6, 6}, 5.0}}, WeightKind{WeightLaw::Capacity, 1.0, 0.2},
                            inst.grid.geometry());
        const double od = run(inst.grid, &radio, inst.start, inst.stop, 0.0, Algorithm::OD).distance;
        for (Algorithm algo : {Algorithm::WD, Algorithm::OA, Algorithm::WA})
            CHECK(run(inst.grid, &radio, inst.start, inst.stop, 0.0, algo).distance == od);
    }
}

TEST_CASE("uniform weights leave the set of optimal paths unchanged") {
    SplitMix64 rng(303);
    for (int i = 0; i < 20; ++i) {
        const RandomInstance inst = random_instance(10, 0.2, rng);
        const RadioWeightMap half = uniform_radio(inst.grid.geometry(), 0.5);
        const double od = run(inst.grid, nullptr, inst.start, inst.stop, 0.0, Algorithm::OD).distance;
        const double wd = run(inst.grid, &half, inst.start, inst.stop, 1.0, Algorithm::WD).distance;
        CHECK(wd == od);
    }
}

TEST_CASE("WD matches the exhaustive oracle for every weight law") {
    SplitMix64 rng(404);
    for (int i = 0; i < 12; ++i) {
        const RandomInstance inst = random_instance(6, 0.2, rng);
        const AccessPoint ap{{rng.next_int(1, 6), rng.next_int(1, 6)}, 4.0};
        for (WeightLaw law :
             {WeightLaw::OnOff, WeightLaw::Amplitude, WeightLaw::Capacity, WeightLaw::Tent}) {
            const RadioWeightMap radio =
                build_radio_map({ap}, WeightKind{law, 1.0, 0.2}, inst.grid.geometry());
            for (double alpha : {0.25, 0.5}) {
                const PlanResult r = run(inst.grid, &radio, inst.start, inst.stop, alpha,
                                         Algorithm::WD);
                const OracleResult o =
                    exhaustive_optimal_path(inst.grid, &radio, alpha, inst.start, inst.stop);
                CHECK(r.combined_cost == doctest::Approx(o.combined).epsilon(1e-9));
                CHECK(o.combined <= r.combined_cost + 1e-9);
            }
        }
    }
}

TEST_CASE("reported metrics are recomputable from the returned path") {
    SplitMix64 rng(505);
    const RandomInstance inst = random_instance(12, 0.2, rng);
    const RadioWeightMap radio =
        build_radio_map({AccessPoint{{6, 7}, 5.0}}, WeightKind{WeightLaw::Amplitude, 1.0, 0.2},
                        inst.grid.geometry());
    for (Algorithm algo : {Algorithm::OD, Algorithm::WD, Algorithm::OA, Algorithm::WA}) {
        const PlanResult r = run(inst.grid, &radio, inst.start, inst.stop, 0.5, algo);
        CHECK(r.distance == f1(r.path));
        CHECK(r.radio_weight == f2(r.path, radio));
        CHECK(r.combined_cost == r.distance - 0.5 * r.radio_weight);
    }
}

TEST_CASE("OA never expands more nodes than OD on obstacle-free grids") {
    SplitMix64 rng(606);
    const BinaryGrid g = empty_grid(30);
    for (int i = 0; i < 20; ++i) {
        const Cell start{rng.next_int(1, 30), rng.next_int(1, 30)};
        Cell stop{rng.next_int(1, 30), rng.next_int(1, 30)};
        if (stop == start) stop.n2 = stop.n2 == 30 ? 1 : stop.n2 + 1;
        const PlanResult od = run(g, nullptr, start, stop, 0.0, Algorithm::OD);
        const PlanResult oa = run(g, nullptr, start, stop, 0.0, Algorithm::OA);
        CHECK(oa.expanded_nodes <= od.expanded_nodes);
        CHECK(oa.distance == od.distance);
    }
}

TEST_CASE("WD's experienced radio weight is non-decreasing in alpha") {
    SplitMix64 rng(707);
    for (int i = 0; i < 8; ++i) {
        const RandomInstance inst = random_instance(10, 0.15, rng);
        const RadioWeightMap radio =
            build_radio_map({AccessPoint{{5, 6}, 5.0}}, WeightKind{WeightLaw::Tent, 1.0, 0.2},
                            inst.grid.geometry());
        double prev = -1.0;
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const PlanResult r = run(inst.grid, &radio, inst.start, inst.stop, alpha,
                                     Algorithm::WD);
            CHECK(r.radio_weight >= prev - 1e-9);
            prev = r.radio_weight;
        }
    }
}

TEST_CASE("negative step costs: label-correcting WD stays feasible and near the oracle") {
    BinaryGrid g = empty_grid(4);
    g.set({2, 3}, 1);
    const RadioWeightMap ones = uniform_radio(g.geometry(), 1.0);
    const double alpha = 4.0; // step costs are -3 per unit length
    const PlanResult r = run(g, &ones, {1, 1}, {4, 4}, alpha, Algorithm::WD);
    CHECK_NOTHROW(r.path.validate());
    CHECK(r.path.points.front() == Cell{1, 1});
    CHECK(r.path.points.back() == Cell{4, 4});
    const OracleResult o = exhaustive_optimal_path(g, &ones, alpha, {1, 1}, {4, 4});
    CHECK(o.combined <= r.combined_cost + 1e-9);
    // with uniform weight 1 and alpha 4 the best simple path is the longest one
    CHECK(r.combined_cost < 0.0);
}

TEST_CASE("single-cell plan when start equals stop") {
    const BinaryGrid g = empty_grid(3);
    const PlanResult r = run(g, nullptr, {2, 2}, {2, 2}, 0.0, Algorithm::OD);
    CHECK(r.path.points == std::vector<Cell>{{2, 2}});
    CHECK(r.distance == 0.0);
}
