#pragma once

#include <cstddef>
#include <stdexcept>

#include "gridnav/radio.hpp"
#include "gridnav/raster.hpp"

namespace gridnav {

// The four planners: original Dijkstra, weighted Dijkstra, original A*,
// weighted A*. OD and OA always use plain Euclidean step costs; WD and WA
// scale each step entering cell c by (1 - alpha * R[c]).
enum class Algorithm { OD, WD, OA, WA };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct NoPathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidEndpointError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PlanRequest {
    const BinaryGrid* obstacles = nullptr;
    const RadioWeightMap* radio = nullptr; // may be null: treated as all-zero
    Cell start;
    Cell stop;
    double alpha = 0.0;
    Algorithm algorithm = Algorithm::OD;
};

struct PlanResult {
    DiscretePath path;
    double distance = 0.0;      // total Euclidean length
    double radio_weight = 0.0;  // radio weight experienced along the path
    double combined_cost = 0.0; // distance - alpha * radio_weight
    std::size_t expanded_nodes = 0;
    std::size_t reexpansions = 0;
};

// Total Euclidean path length. Computed as n_straight + n_diagonal * sqrt(2)
// so that paths with equal step-type counts compare bit-identically.
double f1(const DiscretePath& path);

// Radio weight picked up along the path: each step is scaled by the weight
// of its arriving cell. Grouped by step type for the same reason as f1.
double f2(const DiscretePath& path, const RadioWeightMap& radio);

// Scalarized objective f1 - alpha * f2.
double combined_cost(const DiscretePath& path, const RadioWeightMap& radio, double alpha);

// Cost of one admissible step from -> to under the given algorithm. Negative
// for the weighted algorithms once alpha * R[to] exceeds 1.
double step_cost(Algorithm algorithm, const RadioWeightMap* radio, double alpha, Cell from,
                 Cell to);

// Frontier-selection heuristic evaluated at a cell: 0 for the Dijkstra
// variants, the Euclidean distance to the stop for OA, and that distance
// scaled by (1 - alpha * R[cell]) for WA. The WA heuristic is not guaranteed
// admissible; WA is a fast heuristic, not a certified-optimal planner.
double heuristic(Algorithm algorithm, const RadioWeightMap* radio, double alpha, Cell cell,
                 Cell stop);

// Single-source search over the 8-connected grid of obstacle-free cells.
// A diagonal step is legal iff its destination cell is free (the feasibility
// constraint tests path cells only). For OD/WD with nonnegative step costs
// the result minimizes the combined cost exactly; when alpha * max(R) > 1
// the Dijkstra variants switch to label-correcting search that re-opens
// closed cells on strictly better labels and report the fixed point they
// reach. The A* variants settle every cell at most once (WA's heuristic is
// not admissible, so its paths are feasible but not certified optimal).
// Throws InvalidEndpointError / NoPathError.
PlanResult plan(const PlanRequest& request);

struct OracleResult {
    double combined = 0.0;
    DiscretePath path;
};

// Test oracle: branch-and-bound enumeration of all simple feasible paths,
// returning one with minimum combined cost. Exact but exponential; refuses
// grids with more than max_cells cells.
OracleResult exhaustive_optimal_path(const BinaryGrid& obstacles, const RadioWeightMap* radio,
                                     double alpha, Cell start, Cell stop,
                                     std::size_t max_cells = 64);

} // namespace gridnav
