#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "gridnav/planner.hpp"
#include "gridnav/raster.hpp"
#include "gridnav/rng.hpp"

using namespace gridnav;

namespace {

// Independently coded textbook Bresenham (steep-swap form, minor-axis
// increment on error >= 0), used as the rasterization oracle.
std::vector<Cell> bresenham_oracle(Cell p, Cell q) {
    int x0 = p.n2, y0 = p.n1, x1 = q.n2, y1 = q.n1;
    const bool steep = std::abs(y1 - y0) > std::abs(x1 - x0);
    if (steep) {
        std::swap(x0, y0);
        std::swap(x1, y1);
    }
    const int dx = std::abs(x1 - x0);
    const int dy = std::abs(y1 - y0);
    const int sx = x1 < x0 ? -1 : 1;
    const int sy = y1 < y0 ? -1 : 1;
    int err = 2 * dy - dx;
    int x = x0;
    int y = y0;
    std::vector<Cell> out;
    for (int i = 0;; ++i) {
        out.push_back(steep ? Cell{x, y} : Cell{y, x});
        if (i == dx) break;
        if (err >= 0) {
            y += sy;
            err -= 2 * dx;
        }
        x += sx;
        err += 2 * dy;
    }
    return out;
}

} // namespace

TEST_CASE("bresenham axis-aligned run") {
    const DiscretePath p = bresenham_segment({1, 1}, {1, 4});
    CHECK(p.points == std::vector<Cell>{{1, 1}, {1, 2}, {1, 3}, {1, 4}});
}

TEST_CASE("bresenham exact diagonal") {
    const DiscretePath p = bresenham_segment({1, 1}, {4, 4});
    CHECK(p.points == std::vector<Cell>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
}

TEST_CASE("bresenham gentle slope matches the reference rasterizer") {
    const DiscretePath p = bresenham_segment({1, 1}, {2, 4});
    CHECK(p.points.size() == 4);
    CHECK(p.points == bresenham_oracle({1, 1}, {2, 4}));
}

TEST_CASE("bresenham degenerate segment is the single cell") {
    const DiscretePath p = bresenham_segment({3, 3}, {3, 3});
    CHECK(p.points == std::vector<Cell>{{3, 3}});
}

TEST_CASE("bresenham equals the oracle on every small segment and stays adjacent") {
    for (int a1 = -6; a1 <= 6; a1 += 2)
        for (int a2 = -6; a2 <= 6; a2 += 3)
            for (int b1 = -6; b1 <= 6; b1 += 3)
                for (int b2 = -6; b2 <= 6; b2 += 2) {
                    const Cell p{10 + a1, 10 + a2};
                    const Cell q{10 + b1, 10 + b2};
                    const DiscretePath got = bresenham_segment(p, q);
                    CHECK(got.points == bresenham_oracle(p, q));
                    CHECK_NOTHROW(got.validate());
                }
}

TEST_CASE("bresenham reversal keeps length and endpoints") {
    SplitMix64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const Cell p{rng.next_int(1, 30), rng.next_int(1, 30)};
        const Cell q{rng.next_int(1, 30), rng.next_int(1, 30)};
        const DiscretePath fwd = bresenham_segment(p, q);
        const DiscretePath bwd = bresenham_segment(q, p);
        CHECK(fwd.points.size() == bwd.points.size());
        CHECK(fwd.points.front() == bwd.points.back());
        CHECK(fwd.points.back() == bwd.points.front());
    }
}

TEST_CASE("densify single straight segment") {
    const DiscretePath p = densify_path(WaypointPath{{{1, 1}, {1, 4}}});
    CHECK(p.points.size() == 4);
    CHECK(p.points.front() == Cell{1, 1});
    CHECK(p.points.back() == Cell{1, 4});
}

TEST_CASE("densify a 4-waypoint path: first segment 6 cells, 15 cells total") {
    const WaypointPath w{{{1, 1}, {2, 6}, {7, 11}, {7, 15}}};
    const DiscretePath first = bresenham_segment({1, 1}, {2, 6});
    CHECK(first.points.size() == 6);
    const DiscretePath full = densify_path(w);
    CHECK(full.points.size() == 15);
    CHECK(full.points.front() == Cell{1, 1});
    CHECK(full.points.back() == Cell{7, 15});
    CHECK_NOTHROW(full.validate());
}

TEST_CASE("densify drops duplicated junction cells on collinear waypoints") {
    const DiscretePath p = densify_path(WaypointPath{{{1, 1}, {1, 3}, {1, 5}}});
    CHECK(p.points.size() == 5);
    for (std::size_t i = 1; i < p.points.size(); ++i) CHECK(p.points[i] != p.points[i - 1]);
}

TEST_CASE("waypoint path validation") {
    CHECK_THROWS_AS(densify_path(WaypointPath{{{1, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(densify_path(WaypointPath{{{1, 1}, {1, 1}}}), std::invalid_argument);
}

TEST_CASE("path map entries carry the incoming step length") {
    const GridGeometry geom{5, 1.0};
    const PathMap diag = path_map(DiscretePath{{{1, 1}, {2, 2}}}, geom);
    REQUIRE(diag.step_length.size() == 2);
    CHECK(diag.step_length[0] == std::pair{Cell{1, 1}, 0.0});
    CHECK(diag.step_length[1] == std::pair{Cell{2, 2}, kSqrt2});

    const PathMap straight = path_map(DiscretePath{{{1, 1}, {1, 2}}}, geom);
    CHECK(straight.step_length[1] == std::pair{Cell{1, 2}, 1.0});

    const PathMap single = path_map(DiscretePath{{{3, 3}}}, geom);
    REQUIRE(single.step_length.size() == 1);
    CHECK(single.step_length[0].second == 0.0);
}

TEST_CASE("path map rejects self-intersecting paths") {
    const DiscretePath loop{{{1, 1}, {1, 2}, {2, 2}, {2, 1}, {1, 1}}};
    CHECK_THROWS_AS(path_map(loop, GridGeometry{4, 1.0}), std::invalid_argument);
}

TEST_CASE("sum of path map entries equals the total Euclidean length exactly") {
    SplitMix64 rng(7);
    const GridGeometry geom{40, 1.0};
    for (int i = 0; i < 50; ++i) {
        WaypointPath w;
        w.points.push_back({rng.next_int(1, 40), rng.next_int(1, 40)});
        for (int k = 0; k < 3; ++k) {
            Cell next{rng.next_int(1, 40), rng.next_int(1, 40)};
            if (next == w.points.back()) next.n1 = next.n1 == 40 ? 1 : next.n1 + 1;
            w.points.push_back(next);
        }
        const DiscretePath path = densify_path(w);
        PathMap pm;
        try {
            pm = path_map(path, geom);
        } catch (const std::invalid_argument&) {
            continue; // random waypoints may fold the path onto itself
        }
        // sum entries grouped by step type so the comparison is exact
        std::size_t straight = 0, diagonal = 0;
        double loose = 0.0;
        for (const auto& [cell, len] : pm.step_length) {
            if (len == 1.0) ++straight;
            else if (len == kSqrt2) ++diagonal;
            else CHECK(len == 0.0);
            loose += len;
        }
        const double total = static_cast<double>(straight) + static_cast<double>(diagonal) * kSqrt2;
        CHECK(total == f1(path));
        CHECK(loose == doctest::Approx(f1(path)).epsilon(1e-12));
    }
}
