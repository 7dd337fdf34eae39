#include "lesionseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lesionseg {

SaliencyMap minmax_normalize(const Plane& plane) {
    SaliencyMap out;
    out.values = Plane(plane.width(), plane.height());
    out.normalized = true;
    if (plane.empty()) return out;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < plane.size(); ++i) {
        lo = std::min(lo, plane[i]);
        hi = std::max(hi, plane[i]);
    }
    const double range = hi - lo;
    if (range <= 0.0) return out;  // constant map -> all zeros

    for (std::size_t i = 0; i < plane.size(); ++i)
        out.values[i] = (plane[i] - lo) / range;
    return out;
}

SaliencyMap minmax_normalize(const SaliencyMap& map) { return minmax_normalize(map.values); }

SaliencyMap ensure_normalized(const SaliencyMap& map) {
    return map.normalized ? map : minmax_normalize(map);
}

}  // namespace lesionseg
