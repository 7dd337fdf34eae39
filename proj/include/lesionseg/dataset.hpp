#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lesionseg/config.hpp"
#include "lesionseg/metrics.hpp"

namespace lesionseg {

enum class DatasetLayout { Ph2, Isic2016, Generic };

struct DatasetPair {
    std::filesystem::path image_path;
    std::filesystem::path ground_truth_path;
    std::string image_id;
};

/// Discover image/ground-truth pairs, sorted by image_id.
///  - ph2: image_dir is the dataset root of per-case folders, each holding
///    `<case>_Dermoscopic_Image/` and `<case>_lesion/` subfolders (gt_dir
///    is unused);
///  - isic2016: images in image_dir, masks named `<id>_Segmentation.png`
///    in gt_dir;
///  - generic: `pattern` is "IMG=GT" where each side names a file pattern
///    containing `{id}` (images in image_dir, masks in gt_dir).
/// Images without a ground truth are reported on `warnings` and skipped.
/// Throws IngestError when no pairs remain.
std::vector<DatasetPair> ingest_dataset(DatasetLayout layout,
                                        const std::filesystem::path& image_dir,
                                        const std::filesystem::path& gt_dir,
                                        const std::string& pattern,
                                        std::ostream& warnings);

struct CorpusRow {
    std::string image_id;
    bool failed = false;
    std::string error_message;  // set when failed
    MetricsRecord record;       // valid when not failed
};

struct CorpusReport {
    std::vector<CorpusRow> rows;  // ordered by image_id
    MetricsRecord average;        // macro mean over defined metrics
    size_t evaluated = 0;         // rows that produced metrics
};

/// Segment every pair and score it against its ground truth. Rows keep the
/// ingestion order (sorted ids) regardless of the number of worker threads.
/// A failing image yields an error row and is excluded from the averages.
CorpusReport evaluate_corpus(const std::vector<DatasetPair>& pairs,
                             const PipelineConfig& cfg, int jobs,
                             std::ostream& warnings);

/// CSV with header image_id,sensitivity,specificity,accuracy,dsc; absent
/// metrics become empty cells, failed rows carry `error` in every metric
/// cell, and a final `average` row holds the macro means.
std::string report_to_csv(const CorpusReport& report);

}  // namespace lesionseg
