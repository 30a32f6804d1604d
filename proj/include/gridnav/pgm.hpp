#pragma once

#include <string>

#include "gridnav/grid.hpp"

namespace gridnav {

// Binary PGM (P5, maxval 255) serialization of obstacle maps.
// Pixel values: free = 255, obstacle = 0, undecided = 128. Rows are written
// in row-major order starting from n1 = 1. The spatial precision is kept in
// a "# delta=<value>" header comment so maps round-trip losslessly.

void write_pgm(const TernaryGrid& grid, const std::string& path);
void write_pgm(const BinaryGrid& grid, const std::string& path);

// Radio weight rendering: weight in [0,1] quantized to 0..255.
void write_pgm_weights(const GridGeometry& geom, const std::vector<double>& weights,
                       const std::string& path);

TernaryGrid read_pgm_ternary(const std::string& path);
// Rejects files containing undecided (128) pixels.
BinaryGrid read_pgm_binary(const std::string& path);

} // namespace gridnav
