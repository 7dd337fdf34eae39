#pragma once

// Seeded generator of dermoscopy-like test images: a dark elliptical lesion
// on a noisy bright background, optionally crossed by dark hair strokes.
// The generator's own ellipse mask doubles as ground truth.

#include <cstdint>

#include "lesionseg/raster.hpp"

namespace synthetic {

struct LesionImage {
    lesionseg::Raster image;
    lesionseg::BinaryMask ground_truth;
    bool has_hair = false;
};

/// Deterministic for a given seed. `size` is the square image side.
/// About 30% of seeds produce images overlaid with 2-5 hair strokes.
LesionImage make_lesion_image(uint64_t seed, int size = 256);

}  // namespace synthetic
