#pragma once

#include <string>

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Decode a PNG/JPEG/BMP file into an RGB raster with channels scaled to
/// [0,1] by /255. Throws IoError for unreadable files, FormatError for
/// undecodable content.
Raster load_image(const std::string& path);

/// Write a single plane as an 8-bit grayscale PNG. Values are expected in
/// [0,1]; v is stored as round(v*255), rounding half away from zero.
void save_gray(const Plane& plane, const std::string& path);

/// Write a mask as an 8-bit grayscale PNG, true -> 255, false -> 0.
void save_gray(const BinaryMask& mask, const std::string& path);

/// Write a 3-plane RGB raster (values in [0,1]) as an 8-bit PNG.
void save_rgb(const Raster& img, const std::string& path);

/// Decode a ground-truth mask file; 8-bit values > 127 count as lesion.
BinaryMask load_mask(const std::string& path);

}  // namespace lesionseg
