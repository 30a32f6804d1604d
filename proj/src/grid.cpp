#include "gridnav/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gridnav {

void GridGeometry::validate() const {
    if (n < 2) throw std::invalid_argument("grid size must be >= 2, got " + std::to_string(n));
    if (!(delta > 0.0)) throw std::invalid_argument("grid delta must be > 0");
}

std::pair<double, double> cell_to_coords(Cell cell, const GridGeometry& geom) {
    if (!geom.contains(cell))
        throw std::out_of_range("cell (" + std::to_string(cell.n1) + "," + std::to_string(cell.n2) +
                                ") outside " + std::to_string(geom.n) + "x" + std::to_string(geom.n) +
                                " grid");
    return {geom.delta * (cell.n2 - 1), geom.delta * (cell.n1 - 1)};
}

double cell_distance(Cell a, Cell b) {
    const double d1 = a.n1 - b.n1;
    const double d2 = a.n2 - b.n2;
    return std::sqrt(d1 * d1 + d2 * d2);
}

BinaryGrid::BinaryGrid(GridGeometry geom, std::uint8_t fill) : geom_(geom) {
    geom_.validate();
    if (fill > 1) throw std::invalid_argument("binary grid fill must be 0 or 1");
    values_.assign(geom_.size(), fill);
}

void BinaryGrid::check_cell(Cell c) const {
    if (!geom_.contains(c))
        throw std::out_of_range("cell (" + std::to_string(c.n1) + "," + std::to_string(c.n2) +
                                ") outside grid");
}

std::uint8_t BinaryGrid::at(Cell c) const {
    check_cell(c);
    return values_[geom_.index(c)];
}

void BinaryGrid::set(Cell c, std::uint8_t v) {
    check_cell(c);
    set_index(geom_.index(c), v);
}

void BinaryGrid::set_index(std::size_t i, std::uint8_t v) {
    if (v > 1) throw std::invalid_argument("binary grid value must be 0 or 1");
    values_[i] = v;
}

std::size_t BinaryGrid::obstacle_count() const {
    std::size_t k = 0;
    for (std::uint8_t v : values_) k += v;
    return k;
}

TernaryGrid::TernaryGrid(GridGeometry geom, Ternary fill) : geom_(geom) {
    geom_.validate();
    values_.assign(geom_.size(), fill);
}

void TernaryGrid::check_cell(Cell c) const {
    if (!geom_.contains(c))
        throw std::out_of_range("cell (" + std::to_string(c.n1) + "," + std::to_string(c.n2) +
                                ") outside grid");
}

Ternary TernaryGrid::at(Cell c) const {
    check_cell(c);
    return values_[geom_.index(c)];
}

void TernaryGrid::set(Cell c, Ternary v) {
    check_cell(c);
    values_[geom_.index(c)] = v;
}

std::size_t TernaryGrid::undecided_count() const {
    std::size_t k = 0;
    for (Ternary v : values_)
        if (v == Ternary::Undecided) ++k;
    return k;
}

BinaryGrid obstacles_from_ternary(const TernaryGrid& est) {
    BinaryGrid out(est.geometry());
    for (std::size_t i = 0; i < est.values().size(); ++i)
        out.set_index(i, est.at_index(i) == Ternary::Obstacle ? 1 : 0);
    return out;
}

TernaryGrid ternary_from_binary(const BinaryGrid& grid) {
    TernaryGrid out(grid.geometry(), Ternary::Free);
    for (std::size_t i = 0; i < grid.values().size(); ++i)
        out.set_index(i, grid.at_index(i) ? Ternary::Obstacle : Ternary::Free);
    return out;
}

} // namespace gridnav
