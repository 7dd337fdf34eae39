#pragma once

#include <array>

#include "lesionseg/color.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Log-amplitude and phase of a 2-D spectrum.
struct Spectrum {
    Plane amplitude_log;  // ln(max(|F|, 1e-12))
    Plane phase;          // radians in (-pi, pi]
};

struct SpectralParams {
    int kernel_size = 9;
    double f0 = 2.0;
    double sigma_ratio = 0.55;
    std::array<double, 3> weights_opp{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::array<double, 2> weights_lab{0.5, 0.5};
};

/// Weighted sum w1*RG + w2*BY + w3*I as a single gray plane.
Raster aggregate_opp(const OpponentPlanes& planes,
                     const std::array<double, 3>& weights);

/// Weighted sum w1*a + w2*b (lightness excluded) as a single gray plane.
Raster aggregate_lab(const LabPlanes& planes,
                     const std::array<double, 2>& weights);

/// Isotropic 2-D kernel sampled from the radial log-Gabor profile
/// exp(-(ln(r/f0))^2 / (2 (ln sigma_ratio)^2)), zero at the center (r = 0),
/// normalized to sum 1. Throws ParamError on invalid parameters.
Plane log_gabor_kernel(int size, double f0, double sigma_ratio);

/// Forward FFT decomposed into floored log-amplitude and phase.
Spectrum analyze_spectrum(const Plane& gray);

/// Full spectral path: FFT, log-amplitude filtering with the given kernel,
/// phase-preserving reconstruction, inverse FFT, per-pixel square root of the
/// complex magnitude, min-max normalization.
/// Throws ParamError when either dimension is below 8.
SaliencyMap spectral_map_with_kernel(const Raster& agg, const Plane& kernel);

/// spectral_map_with_kernel using the log-Gabor kernel from `params`.
SaliencyMap spectral_map(const Raster& agg, const SpectralParams& params);

/// Average of the two spectral maps, Gaussian-blurred (3-sigma truncation,
/// reflective padding), min-max normalized.
SaliencyMap frequency_map(const SaliencyMap& map_coc, const SaliencyMap& map_lab,
                          double gaussian_sigma);

}  // namespace lesionseg
