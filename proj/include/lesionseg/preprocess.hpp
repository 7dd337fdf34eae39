#pragma once

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Result of thick-hair detection.
struct HairMask {
    BinaryMask mask;
    double coverage = 0.0;  // fraction of pixels flagged, in [0,1]
};

struct GuidedFilterParams {
    int radius = 4;          // window half-size in pixels
    double epsilon = 1e-3;   // regularization, squared-intensity units
    int subsample = 1;       // >1 enables the fast (subsampled) variant
};

/// Flag dark hair pixels: per color channel, grayscale morphological closing
/// with linear structuring elements at 0, 60 and 120 degrees; a pixel is
/// flagged where the maximum of (closed - original) over all channels and
/// orientations exceeds `threshold`.
/// Throws ParamError when se_length is even, < 3, or exceeds min(H, W).
HairMask detect_hair_mask(const Raster& img, int se_length, double threshold);

/// Replace each flagged pixel with the mean of the non-flagged pixels inside
/// an expanding square neighborhood (5x5 to start, grown until at least four
/// donors are found). Donor values always come from the original image.
/// Unflagged pixels are returned bit-exact. Throws InpaintError when every
/// pixel is flagged.
Raster inpaint_hair(const Raster& img, const HairMask& hair);

/// Guided filter (He & Sun) with optional subsampling: local linear
/// coefficients are estimated from box-filtered statistics, at 1/subsample
/// scale when subsample > 1, and applied to the full-resolution guide.
/// The guide must have 1 or 3 planes; the input may have any count.
/// Throws ParamError on dimension mismatch or invalid parameters.
Raster fast_guided_filter(const Raster& guide, const Raster& input,
                          const GuidedFilterParams& params);

/// Convenience: filter an image with itself as guide and clamp to [0,1].
Raster smooth_image(const Raster& img, const GuidedFilterParams& params);

}  // namespace lesionseg
