#include "gridnav/raster.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gridnav {

void WaypointPath::validate() const {
    if (points.size() < 2) throw std::invalid_argument("waypoint path needs at least 2 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] == points[i - 1])
            throw std::invalid_argument("waypoint path has duplicate consecutive points");
}

void DiscretePath::validate() const {
    if (points.empty()) throw std::invalid_argument("discrete path is empty");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!cells_adjacent(points[i - 1], points[i]))
            throw std::invalid_argument("discrete path step " + std::to_string(i) +
                                        " is not pixel-adjacent");
}

bool cells_adjacent(Cell a, Cell b) {
    const int d1 = std::abs(a.n1 - b.n1);
    const int d2 = std::abs(a.n2 - b.n2);
    return d1 <= 1 && d2 <= 1 && (d1 + d2) > 0;
}

double step_length(Cell from, Cell to) {
    if (!cells_adjacent(from, to)) throw std::invalid_argument("cells are not adjacent");
    return (from.n1 != to.n1 && from.n2 != to.n2) ? kSqrt2 : 1.0;
}

DiscretePath bresenham_segment(Cell p, Cell q) {
    DiscretePath out;
    const int s1 = q.n1 < p.n1 ? -1 : 1;
    const int s2 = q.n2 < p.n2 ? -1 : 1;
    const int a1 = std::abs(q.n1 - p.n1) * 2;
    const int a2 = std::abs(q.n2 - p.n2) * 2;
    int r = p.n1;
    int c = p.n2;
    out.points.push_back({r, c});
    if (a2 > a1) {
        int err = a1 - a2 / 2;
        while (c != q.n2) {
            if (err >= 0) {
                r += s1;
                err -= a2;
            }
            c += s2;
            err += a1;
            out.points.push_back({r, c});
        }
    } else {
        int err = a2 - a1 / 2;
        while (r != q.n1) {
            if (err >= 0) {
                c += s2;
                err -= a1;
            }
            r += s1;
            err += a2;
            out.points.push_back({r, c});
        }
    }
    return out;
}

DiscretePath densify_path(const WaypointPath& waypoints) {
    waypoints.validate();
    DiscretePath out;
    for (std::size_t k = 1; k < waypoints.points.size(); ++k) {
        DiscretePath seg = bresenham_segment(waypoints.points[k - 1], waypoints.points[k]);
        const std::size_t skip = out.points.empty() ? 0 : 1; // drop duplicated junction
        out.points.insert(out.points.end(), seg.points.begin() + skip, seg.points.end());
    }
    return out;
}

PathMap path_map(const DiscretePath& path, const GridGeometry& geom) {
    path.validate();
    geom.validate();
    std::vector<std::uint8_t> seen(geom.size(), 0);
    PathMap out;
    out.geometry = geom;
    out.step_length.reserve(path.points.size());
    for (std::size_t m = 0; m < path.points.size(); ++m) {
        const Cell c = path.points[m];
        if (!geom.contains(c)) throw std::out_of_range("path cell outside grid");
        const std::size_t idx = geom.index(c);
        if (seen[idx])
            throw std::invalid_argument("path revisits cell (" + std::to_string(c.n1) + "," +
                                        std::to_string(c.n2) + "); path map entry is ambiguous");
        seen[idx] = 1;
        out.step_length.emplace_back(c, m == 0 ? 0.0 : step_length(path.points[m - 1], c));
    }
    return out;
}

} // namespace gridnav
