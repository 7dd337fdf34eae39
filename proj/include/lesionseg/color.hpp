#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Opponent color feature planes: red-green, blue-yellow, intensity.
struct OpponentPlanes {
    Plane rg;
    Plane by;
    Plane i;

    int width() const { return rg.width(); }
    int height() const { return rg.height(); }
};

/// CIE Lab planes. L is nominally in [0,100]; a and b are signed chroma axes.
struct LabPlanes {
    Plane l;
    Plane a;
    Plane b;

    int width() const { return l.width(); }
    int height() const { return l.height(); }
};

/// How the intensity channel is formed: from the broadly tuned R,G,B
/// combinations (default) or directly as (r+g+b)/3.
enum class IntensityMode { BroadlyTuned, RawRgb };

/// Per pixel, derive the broadly tuned channels
///   R = r - (g+b)/2,  G = g - (r+b)/2,  B = b - (r+g)/2,  Y = r + g - 2|r-g| + b
/// and from them RG = R - G, BY = B - Y, and the intensity channel.
/// Throws SemanticError when the raster is not RGB-tagged.
OpponentPlanes to_opponent_planes(const Raster& img,
                                  IntensityMode mode = IntensityMode::BroadlyTuned);

/// Standard sRGB -> CIE XYZ (D65) -> CIE Lab conversion per pixel.
/// Throws SemanticError when the raster is not RGB-tagged.
LabPlanes to_lab_planes(const Raster& img);

}  // namespace lesionseg
