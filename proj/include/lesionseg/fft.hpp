#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

struct ComplexPlanes {
    Plane re;
    Plane im;
};

/// 2-D discrete Fourier transform of a complex image. The inverse transform
/// is scaled by 1/(W*H) so that fft2d(fft2d(x), inverse) round-trips.
/// Thread-safe; plans are serialized internally.
ComplexPlanes fft2d(const Plane& re, const Plane& im, bool inverse);

}  // namespace lesionseg
