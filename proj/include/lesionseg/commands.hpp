#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace lesionseg {

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // bad arguments or configuration
inline constexpr int kExitIo = 2;        // unreadable/unwritable files
inline constexpr int kExitPipeline = 3;  // a pipeline stage failed

struct SegmentOptions {
    std::filesystem::path image_path;
    std::filesystem::path out_mask_path;
    std::optional<std::filesystem::path> config_path;
    std::optional<std::filesystem::path> dump_dir;
    bool chart_mode = false;
    bool print_config = false;
};

struct EvaluateOptions {
    std::string layout;  // ph2 | isic2016 | generic
    std::filesystem::path image_dir;
    std::filesystem::path gt_dir;
    std::string pattern;  // generic layout: "IMG_PATTERN=GT_PATTERN" with {id}
    std::filesystem::path report_path;
    std::optional<std::filesystem::path> config_path;
    int jobs = 1;
    bool chart_mode = false;
    bool print_config = false;
};

struct OverlayOptions {
    std::filesystem::path image_path;
    std::filesystem::path mask_path;
    std::filesystem::path out_path;
};

/// Segment one image into a 0/255 mask PNG; optionally dump every
/// intermediate map as a grayscale PNG into dump_dir.
int cmd_segment(const SegmentOptions& opts);

/// Ingest a dataset, score every image, write the CSV report, and print the
/// average row to stdout.
int cmd_evaluate(const EvaluateOptions& opts);

/// Trace the mask boundary onto the image in a contrasting color.
int cmd_overlay(const OverlayOptions& opts);

}  // namespace lesionseg
