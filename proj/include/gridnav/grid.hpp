#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace gridnav {

// Grid cell index, 1-based on both axes: n1 is the row, n2 is the column.
struct Cell {
    int n1 = 1;
    int n2 = 1;

    friend bool operator==(const Cell& a, const Cell& b) { return a.n1 == b.n1 && a.n2 == b.n2; }
    friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
    // lexicographic (n1, n2); used for deterministic tie-breaking
    friend bool operator<(const Cell& a, const Cell& b) {
        return a.n1 != b.n1 ? a.n1 < b.n1 : a.n2 < b.n2;
    }
};

// Square grid of n x n cells with spatial precision delta (meters per cell).
struct GridGeometry {
    int n = 2;
    double delta = 1.0;

    void validate() const;
    bool contains(Cell c) const { return c.n1 >= 1 && c.n1 <= n && c.n2 >= 1 && c.n2 <= n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }
    // row-major index, row n1=1 first; equals the lexicographic rank of (n1, n2)
    std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.n1 - 1) * n + static_cast<std::size_t>(c.n2 - 1);
    }
    Cell cell_at(std::size_t idx) const {
        return Cell{static_cast<int>(idx) / n + 1, static_cast<int>(idx) % n + 1};
    }

    friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
        return a.n == b.n && a.delta == b.delta;
    }
    friend bool operator!=(const GridGeometry& a, const GridGeometry& b) { return !(a == b); }
};

// Geometric coordinate (x, y) in meters of a cell: x grows with the column
// index, y with the row index, cell (1,1) at the origin.
std::pair<double, double> cell_to_coords(Cell cell, const GridGeometry& geom);

// Euclidean distance between two cell centers, in cell units.
double cell_distance(Cell a, Cell b);

// Occupancy states of an estimated obstacle map. Free and Obstacle carry
// map values 0 and 1; Undecided stands for the value 1/2.
enum class Ternary : std::uint8_t { Free = 0, Obstacle = 1, Undecided = 2 };

inline double ternary_value(Ternary t) {
    return t == Ternary::Undecided ? 0.5 : static_cast<double>(t);
}

// Ground-truth / planning obstacle map: 0 = free, 1 = obstacle.
class BinaryGrid {
  public:
    BinaryGrid() = default;
    explicit BinaryGrid(GridGeometry geom, std::uint8_t fill = 0);

    const GridGeometry& geometry() const { return geom_; }
    std::uint8_t at(Cell c) const;
    void set(Cell c, std::uint8_t v);
    std::uint8_t at_index(std::size_t i) const { return values_[i]; }
    void set_index(std::size_t i, std::uint8_t v);

    const std::vector<std::uint8_t>& values() const { return values_; }
    std::size_t obstacle_count() const;

    friend bool operator==(const BinaryGrid& a, const BinaryGrid& b) {
        return a.geom_ == b.geom_ && a.values_ == b.values_;
    }

  private:
    GridGeometry geom_{};
    std::vector<std::uint8_t> values_;
    void check_cell(Cell c) const;
};

// Estimated obstacle map over {free, obstacle, undecided}.
class TernaryGrid {
  public:
    TernaryGrid() = default;
    explicit TernaryGrid(GridGeometry geom, Ternary fill = Ternary::Undecided);

    const GridGeometry& geometry() const { return geom_; }
    Ternary at(Cell c) const;
    void set(Cell c, Ternary v);
    Ternary at_index(std::size_t i) const { return values_[i]; }
    void set_index(std::size_t i, Ternary v) { values_[i] = v; }

    const std::vector<Ternary>& values() const { return values_; }
    std::size_t undecided_count() const;

    friend bool operator==(const TernaryGrid& a, const TernaryGrid& b) {
        return a.geom_ == b.geom_ && a.values_ == b.values_;
    }
    friend bool operator!=(const TernaryGrid& a, const TernaryGrid& b) { return !(a == b); }

  private:
    GridGeometry geom_{};
    std::vector<Ternary> values_;
    void check_cell(Cell c) const;
};

// View of an estimated map as a planning grid: decided obstacles block,
// free and undecided cells are traversable.
BinaryGrid obstacles_from_ternary(const TernaryGrid& est);

// Lift a binary map into the ternary domain (no undecided cells).
TernaryGrid ternary_from_binary(const BinaryGrid& grid);

} // namespace gridnav
