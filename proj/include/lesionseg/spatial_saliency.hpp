#pragma once

#include "lesionseg/color.hpp"
#include "lesionseg/preprocess.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

struct SpatialParams {
    double theta_degrees = 45.0;  // exponent angle; 90 is invalid (tan pole)
    GuidedFilterParams smoothing;
    bool lab_variance_denominator = false;  // use sigma^2 instead of sigma
};

/// Per-pixel sqrt of the L1 distance between the opponent feature vector and
/// its image-wide mean: sqrt(|RG-RGm| + |BY-BYm| + |I-Im|).
SaliencyMap coc_contrast_map(const OpponentPlanes& planes);

/// Per-pixel normalized Euclidean distance from the Lab mean:
/// sqrt(sum_c (v_c-mu_c)^2 / sigma_c). A channel with zero spread contributes
/// nothing. `variance_denominator` switches the divisor to sigma_c^2.
SaliencyMap lab_contrast_map(const LabPlanes& planes,
                             bool variance_denominator = false);

/// Combine the two contrast maps as coc * lab^{tan(theta)} pointwise, filter
/// the product with the guided filter (using `guide`), and min-max normalize.
/// Inputs are min-max normalized first unless already flagged normalized.
/// Throws ParamError when theta is 90 degrees.
SaliencyMap spatial_map(const SaliencyMap& coc, const SaliencyMap& lab,
                        const SpatialParams& params, const Raster& guide);

}  // namespace lesionseg
