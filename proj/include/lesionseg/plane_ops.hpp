#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

double plane_min(const Plane& p);
double plane_max(const Plane& p);
double plane_mean(const Plane& p);
/// Population standard deviation (divides by N).
double plane_stddev(const Plane& p);
bool plane_finite(const Plane& p);

void clamp01_inplace(Plane& p);

/// Mean over the window [x-r, x+r] x [y-r, y+r] clipped to the image,
/// normalized by the in-bounds sample count. Integral-image implementation.
Plane box_mean(const Plane& src, int radius);

/// Separable Gaussian blur, kernel truncated at 3*sigma, reflective padding.
/// sigma <= 0 returns the input unchanged.
Plane gaussian_blur(const Plane& src, double sigma);

/// Dense 2-D convolution with reflective (mirror) padding at the borders.
/// Kernel dimensions must be odd.
Plane convolve_reflect(const Plane& src, const Plane& kernel);

Plane resize_bilinear(const Plane& src, int out_w, int out_h);
BinaryMask resize_nearest(const BinaryMask& src, int out_w, int out_h);

}  // namespace lesionseg
