#pragma once

#include <string>
#include <vector>

#include "gridnav/grid.hpp"

namespace gridnav {

// Fixed radio transmitter with a circular coverage disc, radius in pixels.
struct AccessPoint {
    Cell center;
    double coverage_radius = 100.0;

    void validate(const GridGeometry& geom) const;
};

enum class WeightLaw { OnOff, Amplitude, Capacity, Tent };

// One of the four per-AP weighting laws. The exponents apply to the law that
// uses them: gamma to Amplitude (path-loss decay), beta to Tent.
struct WeightKind {
    WeightLaw law = WeightLaw::Amplitude;
    double gamma = 1.0; // > 0
    double beta = 0.2;  // in (0,1)

    void validate() const;
};

std::string weight_law_name(WeightLaw law);
WeightLaw weight_law_from_name(const std::string& name);

// Per-cell radio quality in [0,1]; zero outside the union of AP discs.
class RadioWeightMap {
  public:
    RadioWeightMap() = default;
    RadioWeightMap(GridGeometry geom, std::vector<double> values);

    const GridGeometry& geometry() const { return geom_; }
    double at(Cell c) const { return values_[geom_.index(c)]; }
    double at_index(std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    double max_value() const { return max_value_; }

  private:
    GridGeometry geom_{};
    std::vector<double> values_;
    double max_value_ = 0.0;
};

// Weight contributed by a single AP at a cell. Zero outside the coverage
// disc; inside, the selected law evaluated on the center distance d (pixels):
//   OnOff     -> 1
//   Amplitude -> min(1, 1 / d^gamma), with d = 0 mapping to 1
//   Capacity  -> 1 - log2(d) / log2(radius), clamped to [0,1], d < 1 -> 1
//   Tent      -> (1 - d / radius)^beta
double ap_weight(const WeightKind& kind, const AccessPoint& ap, Cell cell);

// Dense map of the per-cell maximum of ap_weight over all APs; an empty AP
// list yields the all-zero map.
RadioWeightMap build_radio_map(const std::vector<AccessPoint>& aps, const WeightKind& kind,
                               const GridGeometry& geom);

} // namespace gridnav
