#include "gridnav/postprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace gridnav {

void PostprocessParams::validate() const {
    if (kernel_size < 1 || kernel_size % 2 == 0)
        throw std::invalid_argument("kernel size must be odd and positive");
    if (kernel_radius <= 0) throw std::invalid_argument("kernel radius must be positive");
    if (downsample < 1) throw std::invalid_argument("downsample factor must be >= 1");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must be in (0,1)");
}

std::vector<double> gaussian_kernel(int size, int kernel_radius) {
    if (size < 1 || size % 2 == 0) throw std::invalid_argument("kernel size must be odd");
    if (kernel_radius <= 0) throw std::invalid_argument("kernel radius must be positive");
    const double sigma = kernel_radius / 2.0;
    const int half = size / 2;
    std::vector<double> k(static_cast<std::size_t>(size) * size);
    double sum = 0.0;
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j) {
            const double v = std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            k[static_cast<std::size_t>(i + half) * size + (j + half)] = v;
            sum += v;
        }
    for (double& v : k) v /= sum;
    return k;
}

BinaryGrid postprocess_obstacles(const TernaryGrid& estimated, int kernel_size, int kernel_radius,
                                 int downsample, double tau) {
    PostprocessParams p{kernel_size, kernel_radius, downsample, tau};
    p.validate();

    const GridGeometry geom = estimated.geometry();
    const int n = geom.n;
    const int half = kernel_size / 2;
    const std::vector<double> kernel = gaussian_kernel(kernel_size, kernel_radius);

    // undecided counts as obstacle before filtering
    std::vector<double> src(geom.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        src[i] = estimated.at_index(i) == Ternary::Free ? 0.0 : 1.0;

    const int n_out = 1 + (n - 1) / downsample;
    GridGeometry out_geom{n_out, geom.delta * downsample};
    BinaryGrid out(out_geom);

    // filter evaluated only on the retained downsampling lattice
    for (int oi = 0; oi < n_out; ++oi) {
        const int r = oi * downsample; // 0-based source row
        for (int oj = 0; oj < n_out; ++oj) {
            const int c = oj * downsample;
            double acc = 0.0;
            const int i_lo = std::max(-half, -r);
            const int i_hi = std::min(half, n - 1 - r);
            const int j_lo = std::max(-half, -c);
            const int j_hi = std::min(half, n - 1 - c);
            for (int i = i_lo; i <= i_hi; ++i) {
                const double* srow = &src[static_cast<std::size_t>(r + i) * n + (c + j_lo)];
                const double* krow =
                    &kernel[static_cast<std::size_t>(i + half) * kernel_size + (j_lo + half)];
                for (int j = 0; j <= j_hi - j_lo; ++j) acc += srow[j] * krow[j];
            }
            out.set_index(static_cast<std::size_t>(oi) * n_out + oj, acc > tau ? 1 : 0);
        }
    }
    return out;
}

} // namespace gridnav
