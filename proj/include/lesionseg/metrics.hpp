#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lesionseg/raster.hpp"

namespace lesionseg {

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;

    uint64_t total() const { return tp + fp + fn + tn; }
};

/// Per-image metric row. Fractions except accuracy, which is a percentage.
/// A metric with a zero denominator is absent.
struct MetricsRecord {
    std::string image_id;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> accuracy;
    std::optional<double> dsc;
};

/// Pixelwise confusion counts with the lesion as the positive class.
/// Throws ParamError on dimension mismatch.
ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// sensitivity = tp/(tp+fn), specificity = tn/(tn+fp),
/// dsc = 2tp/(2tp+fp+fn), accuracy = 100*(tp+tn)/total.
/// Throws ParamError when the counts are all zero.
MetricsRecord metrics(const ConfusionCounts& c);

}  // namespace lesionseg
