#include "lesionseg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "lesionseg/coarse_saliency.hpp"
#include "lesionseg/color.hpp"
#include "lesionseg/errors.hpp"
#include "lesionseg/frequency_saliency.hpp"
#include "lesionseg/fusion.hpp"
#include "lesionseg/plane_ops.hpp"
#include "lesionseg/preprocess.hpp"
#include "lesionseg/spatial_saliency.hpp"

namespace lesionseg {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e.what());
    }
}

Plane rgb_mean_plane(const Raster& img) {
    Plane out(img.width(), img.height());
    for (size_t i = 0; i < out.values().size(); ++i) {
        out[i] = (img.planes[0][i] + img.planes[1][i] + img.planes[2][i]) / 3.0;
    }
    return out;
}

Plane mask_plane(const BinaryMask& mask) {
    Plane out(mask.width, mask.height);
    for (size_t i = 0; i < out.values().size(); ++i) {
        out[i] = mask.mask[i] ? 1.0 : 0.0;
    }
    return out;
}

}  // namespace

const std::vector<std::string>& intermediate_names() {
    static const std::vector<std::string> names = {
        "hair_mask", "I_smf",    "Col_coc",  "Col_lab", "Col_map", "C_map",
        "Fmap_coc",  "Fmap_lab", "Feq_map",  "I_map",   "S_Fmap"};
    return names;
}

SegmentationResult run_segment(const Raster& image, const PipelineConfig& cfg,
                               bool collect_intermediates) {
    if (image.tag != PlaneTag::Rgb || image.planes.size() != 3) {
        throw StageError("input", "expected an RGB image");
    }
    const int native_w = image.width();
    const int native_h = image.height();

    // Optional downscale of the longest side for processing.
    Raster work = image;
    const int native_long = std::max(native_w, native_h);
    if (cfg.io_resize_max > 0 && native_long > cfg.io_resize_max) {
        const double scale = static_cast<double>(cfg.io_resize_max) / native_long;
        const int w = std::max(1, static_cast<int>(std::lround(native_w * scale)));
        const int h = std::max(1, static_cast<int>(std::lround(native_h * scale)));
        stage("resize", [&] {
            for (Plane& p : work.planes) {
                p = resize_bilinear(p, w, h);
            }
            return 0;
        });
    }
    const int long_side = std::max(work.width(), work.height());

    SegmentationResult result;
    auto keep = [&](const char* name, Plane plane) {
        if (collect_intermediates) {
            result.intermediates.emplace_back(name, std::move(plane));
        }
    };

    // Hair removal and edge-preserving smoothing.
    const Raster smoothed = stage("preprocess", [&] {
        Raster current = work;
        BinaryMask hair_pixels(work.width(), work.height());
        if (cfg.hair_enabled) {
            const HairMask hair = detect_hair_mask(
                current, effective_hair_se_length(cfg, long_side), cfg.hair_threshold);
            current = inpaint_hair(current, hair);
            hair_pixels = hair.mask;
        }
        keep("hair_mask", mask_plane(hair_pixels));
        GuidedFilterParams params{effective_guided_radius(cfg, long_side),
                                  cfg.guided_epsilon, cfg.guided_subsample};
        Raster smf = smooth_image(current, params);
        keep("I_smf", rgb_mean_plane(smf));
        return smf;
    });

    // Color features.
    OpponentPlanes opp = stage("color", [&] {
        return to_opponent_planes(smoothed, cfg.intensity_mode);
    });
    LabPlanes lab = stage("color", [&] { return to_lab_planes(smoothed); });

    // Spatial-domain contrast map.
    const SaliencyMap col_map = stage("spatial", [&] {
        const SaliencyMap coc = coc_contrast_map(opp);
        const SaliencyMap lab_contrast =
            lab_contrast_map(lab, cfg.lab_variance_denominator);
        keep("Col_coc", ensure_normalized(coc).values);
        keep("Col_lab", ensure_normalized(lab_contrast).values);
        SpatialParams params;
        params.theta_degrees = cfg.spatial_theta_degrees;
        params.smoothing = {effective_spatial_guided_radius(cfg, long_side),
                            cfg.spatial_guided_epsilon, cfg.spatial_guided_subsample};
        params.lab_variance_denominator = cfg.lab_variance_denominator;
        SaliencyMap m = spatial_map(coc, lab_contrast, params, smoothed);
        keep("Col_map", m.values);
        return m;
    });

    // Background-prior coarse map.
    const SaliencyMap c_map = stage("coarse", [&] {
        const int patch = effective_patch_size(cfg, long_side);
        const PatchSet patches = extract_border_patches(opp, lab, patch);
        const BackgroundModel model = cluster_background(patches, cfg.coarse_seed);
        const std::array<SaliencyMap, 4> maps =
            distance_maps(model, opp, lab, patch, cfg.coarse_whitened);
        std::array<double, 4> weights{};
        if (cfg.coarse_weight_mode == CoarseWeightMode::Membership) {
            for (int p = 0; p < 4; ++p) {
                weights[p] = static_cast<double>(model.groups[p].member_count);
            }
        } else {
            weights.fill(1.0);
        }
        SaliencyMap m = coarse_map(maps, weights);
        keep("C_map", m.values);
        return m;
    });

    // Frequency-domain map.
    const SaliencyMap feq_map = stage("frequency", [&] {
        SpectralParams params;
        params.kernel_size = cfg.freq_kernel_size;
        params.f0 = cfg.freq_f0;
        params.sigma_ratio = cfg.freq_sigma_ratio;
        params.weights_opp = cfg.freq_w_opp;
        params.weights_lab = cfg.freq_w_lab;
        const SaliencyMap fmap_coc =
            spectral_map(aggregate_opp(opp, params.weights_opp), params);
        const SaliencyMap fmap_lab =
            spectral_map(aggregate_lab(lab, params.weights_lab), params);
        keep("Fmap_coc", fmap_coc.values);
        keep("Fmap_lab", fmap_lab.values);
        SaliencyMap m = frequency_map(fmap_coc, fmap_lab,
                                      effective_gaussian_sigma(cfg, long_side));
        keep("Feq_map", m.values);
        return m;
    });

    // Two-phase fusion.
    const SaliencyMap fused = stage("fusion", [&] {
        const SaliencyMap initial = initial_map(col_map, feq_map,
                                                cfg.fusion_chart_mode,
                                                cfg.fusion_entropy_bins);
        keep("I_map", initial.values);
        SaliencyMap m = final_map(initial, c_map, cfg.fusion_entropy_bins);
        keep("S_Fmap", m.values);
        return m;
    });

    // Threshold and clean up.
    BinaryMask mask(work.width(), work.height());
    bool degenerate = false;
    stage("threshold", [&] {
        try {
            const double t = otsu_threshold(fused, cfg.fusion_entropy_bins);
            mask = binarize(fused, t);
        } catch (const DegenerateError&) {
            degenerate = true;  // keep the all-false mask
            std::cerr << "warning: saliency map has no separable classes; "
                         "emitting an empty mask\n";
        }
        return 0;
    });
    if (!degenerate) {
        mask = stage("postprocess", [&] {
            return postprocess_mask(mask, effective_post_se_radius(cfg, long_side),
                                    cfg.post_keep_largest);
        });
    }

    result.degenerate = degenerate;
    result.processed_width = work.width();
    result.processed_height = work.height();
    if (mask.width != native_w || mask.height != native_h) {
        result.mask = resize_nearest(mask, native_w, native_h);
    } else {
        result.mask = mask;
    }
    return result;
}

}  // namespace lesionseg
