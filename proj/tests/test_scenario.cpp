#include <doctest.h>

#include <stdexcept>

#include <string>

#include "gridnav/scenario.hpp"

using namespace gridnav;

#ifndef GRIDNAV_SCENARIO_DIR
#define GRIDNAV_SCENARIO_DIR "scenarios"
#endif

namespace {

std::string fixture(const char* name) {
    return std::string(GRIDNAV_SCENARIO_DIR) + "/" + name;
}

} // namespace

TEST_CASE("a minimal scenario gets the reference defaults") {
    const Scenario s = parse_scenario("grid.n = 400\ngrid.delta = 0.1\n");
    CHECK(s.geom.n == 400);
    CHECK(s.geom.delta == 0.1);
    CHECK(s.mapping.n_av == 4);
    CHECK(s.mapping.sync_period == 3.0);
    CHECK(s.mapping.time_step == 0.25);
    CHECK(s.mapping.epsilon == 1e-4);
    CHECK(s.mapping.offset_range == 5);
    CHECK(s.mapping.speed == 2.0);
    CHECK(s.sensor.rho_max == 12.0);
    CHECK(s.sensor.ray_count == 720);
    CHECK(s.sensor.range_step == 0.5);
    CHECK(s.post.kernel_size == 13);
    CHECK(s.post.kernel_radius == 3);
    CHECK(s.post.downsample == 1);
    CHECK(s.post.tau == 0.1);
    CHECK(s.weight.law == WeightLaw::Amplitude);
    CHECK(s.weight.gamma == 1.0);
    CHECK(s.weight.beta == 0.2);
    CHECK(s.obstacles.empty());
    CHECK(s.aps.empty());
    CHECK(s.bench.trials == 500);
    CHECK(s.bench.baseline == Algorithm::OA);
    CHECK(s.bench.alphas == std::vector<double>{0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0});
}

TEST_CASE("comments and blank lines are ignored") {
    const Scenario s =
        parse_scenario("# header\n\ngrid.n = 40   # inline\n   \ngrid.delta = 1.0\n");
    CHECK(s.geom.n == 40);
}

TEST_CASE("syntax errors carry the line number") {
    try {
        parse_scenario("grid.n = 40\nnot a key value\n");
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    try {
        parse_scenario("grid.n = 40\ngrid.bogus = 3\n");
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
        CHECK(std::string(e.what()).find("grid.bogus") != std::string::npos);
    }
}

TEST_CASE("a rectangle outside the grid is named in the error") {
    try {
        parse_scenario("grid.n = 40\ngrid.delta = 1\nobstacle.1 = 10:12,30:44\n");
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("obstacle.1") != std::string::npos);
    }
}

TEST_CASE("gapped indices are rejected") {
    CHECK_THROWS_AS(parse_scenario("grid.n = 40\ngrid.delta = 1\nobstacle.2 = 1:2,1:2\n"),
                    ScenarioError);
    CHECK_THROWS_AS(
        parse_scenario("grid.n = 40\ngrid.delta = 1\nap.1 = 5,5\nap.3 = 7,7\n"),
        ScenarioError);
}

TEST_CASE("start count must match av.count") {
    CHECK_THROWS_AS(parse_scenario("grid.n = 40\ngrid.delta = 1\nav.count = 2\n"
                                   "av.start.1 = 1,1\n"),
                    ScenarioError);
}

TEST_CASE("the golden mapping fixture matches the reference parameters") {
    const Scenario s = load_scenario_file(fixture("mapping_7boxes.scn"));
    CHECK(s.geom.n == 400);
    CHECK(s.geom.delta == 0.1);
    CHECK(s.obstacles.size() == 7);
    CHECK(s.mapping.n_av == 4);
    CHECK(s.av_starts.size() == 4);
    CHECK(s.sensor.rho_max == 12.0);
    CHECK(s.mapping.sync_period == 3.0);
    CHECK(s.mapping.time_step == 0.25);
    CHECK(s.mapping.epsilon == 1e-4);

    const BinaryGrid truth = truth_map(s);
    CHECK(truth.obstacle_count() > 0);
    for (const Cell& c : resolved_starts(s)) CHECK(truth.at(c) == 0);
}

TEST_CASE("the planning fixture carries the AP layout and endpoints") {
    const Scenario s = load_scenario_file(fixture("planning_2aps.scn"));
    CHECK(s.aps.size() == 2);
    CHECK(s.aps[0].coverage_radius == 100.0);
    CHECK(s.weight.law == WeightLaw::Amplitude);
    CHECK(s.weight.gamma == 1.0);
    CHECK(s.weight.beta == 0.2);
    CHECK(s.post.tau == 0.1);
    REQUIRE(s.planner.start.has_value());
    REQUIRE(s.planner.stop.has_value());
    CHECK(s.bench.trials == 500);
}

TEST_CASE("serialize/parse round-trips every field") {
    for (const char* name : {"mapping_7boxes.scn", "planning_2aps.scn", "small_80.scn"}) {
        const Scenario s = load_scenario_file(fixture(name));
        const Scenario back = parse_scenario(serialize_scenario(s));
        CHECK(back == s);
    }
    // a mutated scenario round-trips too (awkward doubles included)
    Scenario s = load_scenario_file(fixture("small_80.scn"));
    s.mapping.epsilon = 0.0123456789012345;
    s.weight.beta = 1.0 / 3.0;
    s.bench.alphas = {0.0, 1.0 / 7.0, 0.3};
    const Scenario back = parse_scenario(serialize_scenario(s));
    CHECK(back == s);
}

TEST_CASE("default starts are the side midpoints") {
    const Scenario s = parse_scenario("grid.n = 401\ngrid.delta = 0.1\n");
    const std::vector<Cell> starts = resolved_starts(s);
    REQUIRE(starts.size() == 4);
    CHECK(starts[0] == Cell{1, 201});
    CHECK(starts[1] == Cell{201, 401});
    CHECK(starts[2] == Cell{401, 201});
    CHECK(starts[3] == Cell{201, 1});
}

TEST_CASE("truth_map rasterizes the rectangles") {
    const Scenario s =
        parse_scenario("grid.n = 20\ngrid.delta = 1\nobstacle.1 = 3:4,5:9\n");
    const BinaryGrid truth = truth_map(s);
    CHECK(truth.obstacle_count() == 10);
    CHECK(truth.at({3, 5}) == 1);
    CHECK(truth.at({4, 9}) == 1);
    CHECK(truth.at({5, 5}) == 0);
}

TEST_CASE("weighted planning beats the unweighted baseline on experienced radio") {
    const Scenario s = load_scenario_file(fixture("planning_2aps.scn"));
    const BinaryGrid planning = postprocess_obstacles(ternary_from_binary(truth_map(s)), s.post);
    const RadioWeightMap radio = build_radio_map(s.aps, s.weight, planning.geometry());

    PlanRequest req;
    req.obstacles = &planning;
    req.radio = &radio;
    req.start = *s.planner.start;
    req.stop = *s.planner.stop;
    req.alpha = 0.5;
    req.algorithm = Algorithm::OD;
    const PlanResult od = plan(req);
    req.algorithm = Algorithm::WD;
    const PlanResult wd = plan(req);

    CHECK(wd.radio_weight >= od.radio_weight);
    CHECK(wd.path.points != od.path.points);
    CHECK(wd.combined_cost <= od.combined_cost + 1e-9);
}

TEST_CASE("pipeline: map -> postprocess -> plan on the small fixture") {
    const Scenario s = load_scenario_file(fixture("small_80.scn"));
    const BinaryGrid truth = truth_map(s);
    MappingParams params = s.mapping;
    const MappingTrace trace = run_mapping(truth, params, s.sensor, resolved_starts(s));
    REQUIRE(trace.convergence_time.has_value());
    CHECK(coverage(trace.final_map) >= 1.0 - params.epsilon);

    const BinaryGrid planning = postprocess_obstacles(trace.final_map, s.post);
    const RadioWeightMap radio = build_radio_map(s.aps, s.weight, planning.geometry());

    PlanRequest req;
    req.obstacles = &planning;
    req.radio = &radio;
    req.start = *s.planner.start;
    req.stop = *s.planner.stop;
    req.alpha = s.planner.alpha;
    req.algorithm = s.planner.algorithm;
    const PlanResult result = plan(req);
    CHECK(result.path.points.front() == *s.planner.start);
    CHECK(result.path.points.back() == *s.planner.stop);
    CHECK(result.distance > 0.0);
}

TEST_CASE("plan endpoints outside the grid are rejected") {
    CHECK_THROWS_AS(parse_scenario("grid.n = 40\ngrid.delta = 1\nplan.start = 41,1\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario("grid.n = 40\ngrid.delta = 1\nplan.algorithm = dijkstra\n"),
                    ScenarioError);
    CHECK_THROWS_AS(parse_scenario("grid.n = 40\ngrid.delta = 1\nradio.weight = linear\n"),
                    ScenarioError);
}
