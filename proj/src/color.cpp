#include "lesionseg/color.hpp"

#include <cmath>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

void require_rgb(const Raster& img, const char* fn) {
    if (img.tag != PlaneTag::Rgb || img.planes.size() != 3) {
        throw SemanticError(std::string(fn) + ": expected an RGB raster");
    }
}

// sRGB companding inverse: gamma-encoded channel value -> linear light.
double srgb_to_linear(double c) {
    return (c <= 0.04045) ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIE Lab helper function applied to ratios against the white point.
double lab_f(double t) {
    constexpr double kDelta = 6.0 / 29.0;
    constexpr double kDelta3 = kDelta * kDelta * kDelta;
    if (t > kDelta3) {
        return std::cbrt(t);
    }
    return t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

}  // namespace

OpponentPlanes to_opponent_planes(const Raster& img, IntensityMode mode) {
    require_rgb(img, "to_opponent_planes");
    const int w = img.width();
    const int h = img.height();
    OpponentPlanes out{Plane(w, h), Plane(w, h), Plane(w, h)};
    const Plane& rp = img.planes[0];
    const Plane& gp = img.planes[1];
    const Plane& bp = img.planes[2];
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double r = rp.at(x, y);
            const double g = gp.at(x, y);
            const double b = bp.at(x, y);
            const double cr = r - (g + b) / 2.0;
            const double cg = g - (r + b) / 2.0;
            const double cb = b - (r + g) / 2.0;
            const double cy = r + g - 2.0 * std::abs(r - g) + b;
            out.rg.at(x, y) = cr - cg;
            out.by.at(x, y) = cb - cy;
            if (mode == IntensityMode::BroadlyTuned) {
                out.i.at(x, y) = (cr + cg + cb) / 3.0;
            } else {
                out.i.at(x, y) = (r + g + b) / 3.0;
            }
        }
    }
    return out;
}

LabPlanes to_lab_planes(const Raster& img) {
    require_rgb(img, "to_lab_planes");
    const int w = img.width();
    const int h = img.height();
    LabPlanes out{Plane(w, h), Plane(w, h), Plane(w, h)};
    const Plane& rp = img.planes[0];
    const Plane& gp = img.planes[1];
    const Plane& bp = img.planes[2];
    // D65 reference white in the same scale as the XYZ matrix below.
    constexpr double kXn = 0.95047;
    constexpr double kYn = 1.0;
    constexpr double kZn = 1.08883;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double r = srgb_to_linear(rp.at(x, y));
            const double g = srgb_to_linear(gp.at(x, y));
            const double b = srgb_to_linear(bp.at(x, y));
            const double X = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
            const double Y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
            const double Z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
            const double fx = lab_f(X / kXn);
            const double fy = lab_f(Y / kYn);
            const double fz = lab_f(Z / kZn);
            out.l.at(x, y) = 116.0 * fy - 16.0;
            out.a.at(x, y) = 500.0 * (fx - fy);
            out.b.at(x, y) = 200.0 * (fy - fz);
        }
    }
    return out;
}

}  // namespace lesionseg
