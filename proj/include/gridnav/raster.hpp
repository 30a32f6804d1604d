#pragma once

#include <vector>

#include "gridnav/grid.hpp"

namespace gridnav {

// Exact value used for diagonal step lengths throughout the project, so that
// equal step-type counts always produce bit-identical path lengths.
inline constexpr double kSqrt2 = 1.4142135623730951;

// Coarse path given as K >= 2 waypoints; segments between consecutive
// waypoints may be arbitrarily long.
struct WaypointPath {
    std::vector<Cell> points;

    void validate() const;
};

// Pixel-adjacent path: consecutive cells differ by at most one step on each
// axis (Chebyshev distance 1). A single cell is a valid degenerate path.
struct DiscretePath {
    std::vector<Cell> points;

    void validate() const;
    std::size_t length() const { return points.size(); }
};

// Sparse path map: the step length (0, 1 or sqrt(2)) that enters each path
// cell, in path order. The first entry carries length 0.
struct PathMap {
    GridGeometry geometry;
    std::vector<std::pair<Cell, double>> step_length;
};

// True when the two cells are distinct and within one step on both axes.
bool cells_adjacent(Cell a, Cell b);

// Length of one admissible step: 1 for horizontal/vertical, sqrt(2) for
// diagonal. Throws for non-adjacent cells.
double step_length(Cell from, Cell to);

// Integer Bresenham rasterization of the segment p..q, endpoints included.
// Driving-axis error form, incrementing the minor axis on error >= 0; this
// tie-breaking at exact half-steps is part of the contract.
DiscretePath bresenham_segment(Cell p, Cell q);

// Expand a waypoint path into a pixel-adjacent path by rasterizing each
// segment and dropping the duplicated junction cells.
DiscretePath densify_path(const WaypointPath& waypoints);

// Build the path map of a pixel-adjacent path. The path must not revisit a
// cell; a revisit would make the per-cell entry ambiguous.
PathMap path_map(const DiscretePath& path, const GridGeometry& geom);

} // namespace gridnav
