#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridnav/bench.hpp"
#include "gridnav/mapping.hpp"
#include "gridnav/planner.hpp"
#include "gridnav/postprocess.hpp"
#include "gridnav/radio.hpp"

namespace gridnav {

// Parse or validation failure; the message carries the offending line or
// field name.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Axis-aligned obstacle rectangle, inclusive 1-based ranges.
struct ObstacleRect {
    int r1 = 1, r2 = 1, c1 = 1, c2 = 1;

    friend bool operator==(const ObstacleRect& a, const ObstacleRect& b) {
        return a.r1 == b.r1 && a.r2 == b.r2 && a.c1 == b.c1 && a.c2 == b.c2;
    }
};

struct PlannerParams {
    double alpha = 0.5;
    Algorithm algorithm = Algorithm::WD;
    std::optional<Cell> start;
    std::optional<Cell> stop;
};

struct BenchParams {
    int trials = 500;
    std::vector<double> alphas = {0.0, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0};
    std::vector<Algorithm> algorithms = {Algorithm::OD, Algorithm::WD, Algorithm::OA,
                                         Algorithm::WA};
    Algorithm baseline = Algorithm::OA;
    std::vector<WeightLaw> weights = {WeightLaw::OnOff, WeightLaw::Amplitude, WeightLaw::Capacity,
                                      WeightLaw::Tent};
    std::uint64_t seed = 7;
};

// Full experiment description in the line-oriented `section.key = value`
// text format. Scalar defaults follow the reference 40 m scenario; obstacle
// rectangles and access points default to none, vehicle starts to the
// midpoints of the map sides.
struct Scenario {
    GridGeometry geom{400, 0.1};
    std::vector<ObstacleRect> obstacles;
    std::vector<Cell> av_starts; // empty: derive from boundary midpoints
    MappingParams mapping;
    SensorConfig sensor;
    std::vector<AccessPoint> aps;
    WeightKind weight;
    PostprocessParams post;
    PlannerParams planner;
    BenchParams bench;

    friend bool operator==(const Scenario& a, const Scenario& b);
};

Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& s);
Scenario load_scenario_file(const std::string& path);

// Ground-truth obstacle map with the scenario's rectangles filled in.
BinaryGrid truth_map(const Scenario& s);

// Explicit starts if given, otherwise mapping.n_av cells cycling through the
// side midpoints (north, east, south, west).
std::vector<Cell> resolved_starts(const Scenario& s);

} // namespace gridnav
