#include "lesionseg/frequency_saliency.hpp"

#include <cmath>

#include "lesionseg/errors.hpp"
#include "lesionseg/fft.hpp"
#include "lesionseg/plane_ops.hpp"

namespace lesionseg {

namespace {
constexpr double kAmplitudeFloor = 1e-12;
}

Raster aggregate_opp(const OpponentPlanes& planes,
                     const std::array<double, 3>& weights) {
    for (const double w : weights) {
        if (w < 0.0 || w > 1.0) {
            throw ParamError("aggregate_opp: weights must lie in [0,1]");
        }
    }
    const int w = planes.width();
    const int h = planes.height();
    Plane out(w, h);
    for (size_t i = 0; i < out.values().size(); ++i) {
        out[i] = weights[0] * planes.rg[i] + weights[1] * planes.by[i] +
                 weights[2] * planes.i[i];
    }
    return Raster{PlaneTag::Gray, {std::move(out)}};
}

Raster aggregate_lab(const LabPlanes& planes,
                     const std::array<double, 2>& weights) {
    for (const double w : weights) {
        if (w < 0.0 || w > 1.0) {
            throw ParamError("aggregate_lab: weights must lie in [0,1]");
        }
    }
    const int w = planes.width();
    const int h = planes.height();
    Plane out(w, h);
    for (size_t i = 0; i < out.values().size(); ++i) {
        out[i] = weights[0] * planes.a[i] + weights[1] * planes.b[i];
    }
    return Raster{PlaneTag::Gray, {std::move(out)}};
}

Plane log_gabor_kernel(int size, double f0, double sigma_ratio) {
    if (size < 3 || size % 2 == 0) {
        throw ParamError("log_gabor_kernel: size must be odd and >= 3");
    }
    if (!(f0 > 0.0)) {
        throw ParamError("log_gabor_kernel: f0 must be positive");
    }
    if (!(sigma_ratio > 0.0) || !(sigma_ratio < 1.0)) {
        throw ParamError("log_gabor_kernel: sigma_ratio must lie in (0,1)");
    }
    const int half = size / 2;
    const double log_sigma = std::log(sigma_ratio);
    const double denom = 2.0 * log_sigma * log_sigma;
    Plane kernel(size, size);
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dx = x - half;
            const double dy = y - half;
            const double r = std::sqrt(dx * dx + dy * dy);
            double v = 0.0;  // the log-Gabor profile vanishes at r = 0
            if (r > 0.0) {
                const double lr = std::log(r / f0);
                v = std::exp(-(lr * lr) / denom);
            }
            kernel.at(x, y) = v;
            sum += v;
        }
    }
    for (double& v : kernel.values()) {
        v /= sum;
    }
    return kernel;
}

Spectrum analyze_spectrum(const Plane& gray) {
    const int w = gray.width();
    const int h = gray.height();
    const ComplexPlanes freq = fft2d(gray, Plane(w, h, 0.0), false);
    Spectrum out{Plane(w, h), Plane(w, h)};
    for (size_t i = 0; i < out.amplitude_log.values().size(); ++i) {
        const double amp = std::hypot(freq.re[i], freq.im[i]);
        out.amplitude_log[i] = std::log(std::max(amp, kAmplitudeFloor));
        out.phase[i] = std::atan2(freq.im[i], freq.re[i]);
    }
    return out;
}

SaliencyMap spectral_map_with_kernel(const Raster& agg, const Plane& kernel) {
    if (agg.planes.size() != 1) {
        throw ParamError("spectral_map_with_kernel: expected a single-plane raster");
    }
    const int w = agg.width();
    const int h = agg.height();
    if (w < 8 || h < 8) {
        throw ParamError("spectral_map_with_kernel: image must be at least 8x8");
    }
    // A constant image has spectral energy only at DC and carries nothing to
    // rank; the equation path would merely normalize numerical dust (the
    // amplitude floor and the zero-center kernel perturb the empty bins), so
    // return the zero map directly.
    if (plane_min(agg.planes[0]) == plane_max(agg.planes[0])) {
        SaliencyMap zero;
        zero.values = Plane(w, h, 0.0);
        zero.normalized = true;
        return zero;
    }
    const Spectrum spec = analyze_spectrum(agg.planes[0]);
    const Plane filtered = convolve_reflect(spec.amplitude_log, kernel);

    Plane re(w, h), im(w, h);
    for (size_t i = 0; i < re.values().size(); ++i) {
        const double amp = std::exp(filtered[i]);
        re[i] = amp * std::cos(spec.phase[i]);
        im[i] = amp * std::sin(spec.phase[i]);
    }
    const ComplexPlanes spatial = fft2d(re, im, true);
    Plane raw(w, h);
    for (size_t i = 0; i < raw.values().size(); ++i) {
        raw[i] = std::sqrt(std::hypot(spatial.re[i], spatial.im[i]));
    }
    return minmax_normalize(raw);
}

SaliencyMap spectral_map(const Raster& agg, const SpectralParams& params) {
    const Plane kernel =
        log_gabor_kernel(params.kernel_size, params.f0, params.sigma_ratio);
    return spectral_map_with_kernel(agg, kernel);
}

SaliencyMap frequency_map(const SaliencyMap& map_coc, const SaliencyMap& map_lab,
                          double gaussian_sigma) {
    if (!map_coc.values.same_size(map_lab.values)) {
        throw ParamError("frequency_map: maps have different dimensions");
    }
    const int w = map_coc.values.width();
    const int h = map_coc.values.height();
    Plane avg(w, h);
    for (size_t i = 0; i < avg.values().size(); ++i) {
        avg[i] = 0.5 * (map_coc.values[i] + map_lab.values[i]);
    }
    const Plane blurred = gaussian_blur(avg, gaussian_sigma);
    return minmax_normalize(blurred);
}

}  // namespace lesionseg
