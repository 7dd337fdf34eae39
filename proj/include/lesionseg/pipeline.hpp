#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

struct SegmentationResult {
    BinaryMask mask;  // at the original image resolution
    bool degenerate = false;  // threshold found no separable classes
    int processed_width = 0;
    int processed_height = 0;
    // Intermediate maps at processing resolution, in dump order. Values are
    // gray planes in [0,1].
    std::vector<std::pair<std::string, Plane>> intermediates;
};

/// Run the full segmentation pipeline on an RGB raster. Stage failures are
/// rethrown as StageError naming the stage. When the threshold step finds a
/// constant map the result is an all-false mask with `degenerate` set and a
/// warning on stderr.
SegmentationResult run_segment(const Raster& image, const PipelineConfig& cfg,
                               bool collect_intermediates);

/// The intermediate names run_segment produces, in dump order.
const std::vector<std::string>& intermediate_names();

}  // namespace lesionseg
