#pragma once

#include <vector>

#include "gridnav/grid.hpp"

namespace gridnav {

// Parameters of the obstacle-map post-processing stage: lowpass filter,
// optional downsampling, and binarization threshold.
struct PostprocessParams {
    int kernel_size = 13;   // odd
    int kernel_radius = 3;  // pixels; Gaussian sigma = radius / 2
    int downsample = 1;     // L >= 1; keeps cell (1,1) and every L-th cell
    double tau = 0.1;       // binarization threshold, in (0,1)

    void validate() const;
};

// size x size Gaussian kernel with sigma = radius / 2, normalized to unit
// sum, row-major.
std::vector<double> gaussian_kernel(int size, int kernel_radius);

// Build the planning obstacle map from an estimated map: undecided cells are
// treated as obstacles, the map is lowpass filtered (zero padding outside),
// downsampled by keeping cell (1,1) and every L-th cell on each axis, and
// binarized at threshold tau. The output geometry has 1 + (N-1)/L cells per
// side and precision L * delta.
BinaryGrid postprocess_obstacles(const TernaryGrid& estimated, int kernel_size, int kernel_radius,
                                 int downsample, double tau);

inline BinaryGrid postprocess_obstacles(const TernaryGrid& estimated, const PostprocessParams& p) {
    return postprocess_obstacles(estimated, p.kernel_size, p.kernel_radius, p.downsample, p.tau);
}

} // namespace gridnav
