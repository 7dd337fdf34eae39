#include "lesionseg/spatial_saliency.hpp"

#include <cmath>

#include "lesionseg/errors.hpp"
#include "lesionseg/plane_ops.hpp"

namespace lesionseg {

SaliencyMap coc_contrast_map(const OpponentPlanes& planes) {
    const int w = planes.width();
    const int h = planes.height();
    const double mu_rg = plane_mean(planes.rg);
    const double mu_by = plane_mean(planes.by);
    const double mu_i = plane_mean(planes.i);
    SaliencyMap out{Plane(w, h), false};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double l1 = std::abs(planes.rg.at(x, y) - mu_rg) +
                              std::abs(planes.by.at(x, y) - mu_by) +
                              std::abs(planes.i.at(x, y) - mu_i);
            out.values.at(x, y) = std::sqrt(l1);
        }
    }
    return out;
}

SaliencyMap lab_contrast_map(const LabPlanes& planes, bool variance_denominator) {
    const int w = planes.width();
    const int h = planes.height();
    const Plane* chans[3] = {&planes.l, &planes.a, &planes.b};
    double mu[3], denom[3];
    for (int c = 0; c < 3; ++c) {
        mu[c] = plane_mean(*chans[c]);
        const double sigma = plane_stddev(*chans[c]);
        denom[c] = variance_denominator ? sigma * sigma : sigma;
    }
    SaliencyMap out{Plane(w, h), false};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int c = 0; c < 3; ++c) {
                if (denom[c] == 0.0) {
                    continue;  // a flat channel carries no contrast
                }
                const double d = chans[c]->at(x, y) - mu[c];
                acc += d * d / denom[c];
            }
            out.values.at(x, y) = std::sqrt(acc);
        }
    }
    return out;
}

SaliencyMap spatial_map(const SaliencyMap& coc, const SaliencyMap& lab,
                        const SpatialParams& params, const Raster& guide) {
    if (!coc.values.same_size(lab.values)) {
        throw ParamError("spatial_map: contrast maps have different dimensions");
    }
    if (guide.width() != coc.values.width() || guide.height() != coc.values.height()) {
        throw ParamError("spatial_map: guide dimensions do not match maps");
    }
    if (params.theta_degrees == 90.0) {
        throw ParamError("spatial_map: theta of 90 degrees has no finite tangent");
    }
    const double exponent = std::tan(params.theta_degrees * M_PI / 180.0);

    const SaliencyMap coc_n = ensure_normalized(coc);
    const SaliencyMap lab_n = ensure_normalized(lab);
    const int w = coc_n.values.width();
    const int h = coc_n.values.height();
    Plane combined(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double base = lab_n.values.at(x, y);
            double weight;
            if (exponent == 0.0) {
                weight = 1.0;  // includes 0^0, defined as 1 here
            } else {
                if (exponent < 0.0 && base < 1e-12) {
                    base = 1e-12;  // keep negative powers finite
                }
                weight = std::pow(base, exponent);
            }
            combined.at(x, y) = coc_n.values.at(x, y) * weight;
        }
    }

    Raster wrapped{PlaneTag::Map, {combined}};
    const Raster filtered = fast_guided_filter(guide, wrapped, params.smoothing);
    return minmax_normalize(filtered.planes[0]);
}

}  // namespace lesionseg
