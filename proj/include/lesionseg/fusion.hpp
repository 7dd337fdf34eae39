#pragma once

#include <vector>

#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Shannon entropy (bits) of the `bins`-bin histogram of a [0,1] map.
double entropy(const SaliencyMap& map, int bins = 256);

/// Entropy-weighted combination of the spatial and frequency maps:
/// w = reciprocal entropy (floored) per input; sum mode adds the weighted
/// maps, chart mode multiplies them pixelwise. Result is min-max normalized.
SaliencyMap initial_map(const SaliencyMap& col, const SaliencyMap& feq,
                        bool chart_mode, int entropy_bins = 256);

/// Entropy-weighted pixelwise product of the initial and coarse maps,
/// min-max normalized.
SaliencyMap final_map(const SaliencyMap& initial, const SaliencyMap& coarse,
                      int entropy_bins = 256);

/// Threshold (a bin boundary in [0,1]) maximizing the between-class variance
/// of the map's histogram; ties resolved toward the lowest threshold.
/// Throws DegenerateError when the histogram occupies a single bin.
double otsu_threshold(const SaliencyMap& map, int bins = 256);

/// Exposed for testing: Otsu's search over an explicit histogram.
double otsu_from_histogram(const std::vector<double>& histogram);

/// Pixels strictly above the threshold.
BinaryMask binarize(const SaliencyMap& map, double threshold);

/// Binary opening then closing with a disk structuring element, hole filling
/// (flood from the border of the complement), and optional retention of the
/// largest 8-connected component. The sweep is repeated until the mask is
/// stable, so the operator is idempotent.
BinaryMask postprocess_mask(const BinaryMask& mask, int se_radius,
                            bool keep_largest);

}  // namespace lesionseg
