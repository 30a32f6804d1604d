#include "gridnav/radio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridnav {

void AccessPoint::validate(const GridGeometry& geom) const {
    if (!(coverage_radius > 0.0)) throw std::invalid_argument("AP coverage radius must be > 0");
    if (!geom.contains(center)) throw std::invalid_argument("AP center outside grid");
}

void WeightKind::validate() const {
    if (law == WeightLaw::Amplitude && !(gamma > 0.0))
        throw std::invalid_argument("amplitude exponent gamma must be > 0");
    if (law == WeightLaw::Tent && !(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("tent exponent beta must be in (0,1)");
}

std::string weight_law_name(WeightLaw law) {
    switch (law) {
        case WeightLaw::OnOff: return "onoff";
        case WeightLaw::Amplitude: return "amplitude";
        case WeightLaw::Capacity: return "capacity";
        case WeightLaw::Tent: return "tent";
    }
    return "?";
}

WeightLaw weight_law_from_name(const std::string& name) {
    if (name == "onoff") return WeightLaw::OnOff;
    if (name == "amplitude") return WeightLaw::Amplitude;
    if (name == "capacity") return WeightLaw::Capacity;
    if (name == "tent") return WeightLaw::Tent;
    throw std::invalid_argument("unknown radio weight '" + name +
                                "' (expected onoff, amplitude, capacity or tent)");
}

RadioWeightMap::RadioWeightMap(GridGeometry geom, std::vector<double> values)
    : geom_(geom), values_(std::move(values)) {
    geom_.validate();
    if (values_.size() != geom_.size())
        throw std::invalid_argument("radio map values do not match geometry");
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("radio weights must lie in [0,1]");
        max_value_ = std::max(max_value_, v);
    }
}

double ap_weight(const WeightKind& kind, const AccessPoint& ap, Cell cell) {
    kind.validate();
    const double d = cell_distance(ap.center, cell);
    const double d_max = ap.coverage_radius;
    if (d > d_max) return 0.0;
    switch (kind.law) {
        case WeightLaw::OnOff:
            return 1.0;
        case WeightLaw::Amplitude:
            // 1/d^gamma exceeds 1 for d < 1; saturate to keep the [0,1] range
            if (d <= 1.0) return 1.0;
            return std::min(1.0, 1.0 / std::pow(d, kind.gamma));
        case WeightLaw::Capacity: {
            if (d < 1.0) return 1.0;
            if (d_max <= 1.0) return 0.0;
            const double v = 1.0 - std::log2(d) / std::log2(d_max);
            return std::clamp(v, 0.0, 1.0);
        }
        case WeightLaw::Tent:
            return std::pow(1.0 - d / d_max, kind.beta);
    }
    return 0.0;
}

RadioWeightMap build_radio_map(const std::vector<AccessPoint>& aps, const WeightKind& kind,
                               const GridGeometry& geom) {
    geom.validate();
    kind.validate();
    for (const AccessPoint& ap : aps) ap.validate(geom);

    std::vector<double> values(geom.size(), 0.0);
    for (const AccessPoint& ap : aps) {
        // only the disc's bounding box needs evaluation
        const int r = static_cast<int>(std::ceil(ap.coverage_radius));
        const int r1 = std::max(1, ap.center.n1 - r);
        const int r2 = std::min(geom.n, ap.center.n1 + r);
        const int c1 = std::max(1, ap.center.n2 - r);
        const int c2 = std::min(geom.n, ap.center.n2 + r);
        for (int i = r1; i <= r2; ++i)
            for (int j = c1; j <= c2; ++j) {
                const Cell cell{i, j};
                const std::size_t idx = geom.index(cell);
                values[idx] = std::max(values[idx], ap_weight(kind, ap, cell));
            }
    }
    return RadioWeightMap(geom, std::move(values));
}

} // namespace gridnav
