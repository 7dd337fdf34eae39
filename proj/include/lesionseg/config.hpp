#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "lesionseg/color.hpp"

namespace lesionseg {

enum class CoarseWeightMode { Membership, Uniform };

/// Every tunable of the pipeline with its default. Values of 0 for
/// guided.radius, freq.gaussian_sigma and post.se_radius mean "derive from
/// the image size"; see the effective_* helpers.
struct PipelineConfig {
    int io_resize_max = 512;  // longest side before processing; 0 = native

    IntensityMode intensity_mode = IntensityMode::BroadlyTuned;

    bool hair_enabled = true;
    int hair_se_length = 15;  // at 512-px scale
    double hair_threshold = 0.08;

    int guided_radius = 0;  // 0 = auto
    double guided_epsilon = 1e-3;
    int guided_subsample = 4;

    double spatial_theta_degrees = 45.0;
    int spatial_guided_radius = 0;  // 0 = auto
    double spatial_guided_epsilon = 1e-3;
    int spatial_guided_subsample = 4;
    bool lab_variance_denominator = false;

    int coarse_patch_size = 8;  // at 512-px scale
    uint64_t coarse_seed = 17;
    bool coarse_whitened = false;
    CoarseWeightMode coarse_weight_mode = CoarseWeightMode::Membership;

    int freq_kernel_size = 9;
    double freq_f0 = 2.0;
    double freq_sigma_ratio = 0.55;
    double freq_gaussian_sigma = 0.0;  // 0 = auto
    std::array<double, 3> freq_w_opp{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::array<double, 2> freq_w_lab{0.5, 0.5};

    bool fusion_chart_mode = false;
    int fusion_entropy_bins = 256;

    int post_se_radius = 0;  // 0 = auto
    bool post_keep_largest = true;
};

/// Parse a flat `key = value` text file ('#' starts a comment). Unknown keys
/// and out-of-range values raise ParamError. Missing keys keep defaults.
PipelineConfig load_config(const std::filesystem::path& path);

/// Apply one `key = value` assignment to an existing config.
void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value);

/// Validate all cross-field constraints; throws ParamError on violation.
void validate_config(const PipelineConfig& cfg);

/// Serialize every key with enough precision to reload bit-identically.
std::string serialize_config(const PipelineConfig& cfg);

// Image-size-dependent effective values (long_side = max(H, W) of the
// processed image).
int effective_hair_se_length(const PipelineConfig& cfg, int long_side);
int effective_guided_radius(const PipelineConfig& cfg, int long_side);
int effective_spatial_guided_radius(const PipelineConfig& cfg, int long_side);
int effective_patch_size(const PipelineConfig& cfg, int long_side);
double effective_gaussian_sigma(const PipelineConfig& cfg, int long_side);
int effective_post_se_radius(const PipelineConfig& cfg, int long_side);

}  // namespace lesionseg
