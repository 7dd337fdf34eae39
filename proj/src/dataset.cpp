#include "lesionseg/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <thread>

#include "lesionseg/errors.hpp"
#include "lesionseg/io.hpp"
#include "lesionseg/pipeline.hpp"

namespace lesionseg {

namespace fs = std::filesystem;

namespace {

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// First image file within the unique subdirectory of `case_dir` whose name
// ends with `suffix`; empty path when either is missing.
fs::path find_in_subdir(const fs::path& case_dir, const std::string& suffix) {
    for (const fs::path& sub : sorted_entries(case_dir)) {
        if (!fs::is_directory(sub) || !ends_with(sub.filename().string(), suffix)) {
            continue;
        }
        for (const fs::path& file : sorted_entries(sub)) {
            if (fs::is_regular_file(file) && is_image_file(file)) {
                return file;
            }
        }
    }
    return {};
}

std::vector<DatasetPair> ingest_ph2(const fs::path& root, std::ostream& warnings) {
    std::vector<DatasetPair> pairs;
    for (const fs::path& case_dir : sorted_entries(root)) {
        if (!fs::is_directory(case_dir)) {
            continue;
        }
        const std::string id = case_dir.filename().string();
        const fs::path image = find_in_subdir(case_dir, "_Dermoscopic_Image");
        const fs::path gt = find_in_subdir(case_dir, "_lesion");
        if (image.empty() || gt.empty()) {
            warnings << "warning: skipping case '" << id
                     << "': missing dermoscopic image or lesion mask\n";
            continue;
        }
        pairs.push_back({image, gt, id});
    }
    return pairs;
}

std::vector<DatasetPair> ingest_isic(const fs::path& image_dir, const fs::path& gt_dir,
                                     std::ostream& warnings) {
    std::vector<DatasetPair> pairs;
    for (const fs::path& file : sorted_entries(image_dir)) {
        if (!fs::is_regular_file(file) || !is_image_file(file)) {
            continue;
        }
        const std::string id = file.stem().string();
        const fs::path gt = gt_dir / (id + "_Segmentation.png");
        if (!fs::exists(gt)) {
            warnings << "warning: skipping image '" << id
                     << "': no ground truth '" << gt.string() << "'\n";
            continue;
        }
        pairs.push_back({file, gt, id});
    }
    return pairs;
}

struct IdPattern {
    std::string prefix;
    std::string suffix;
};

IdPattern split_pattern(const std::string& pattern) {
    const auto pos = pattern.find("{id}");
    if (pos == std::string::npos) {
        throw ParamError("dataset pattern: each side must contain {id}, got '" +
                         pattern + "'");
    }
    return {pattern.substr(0, pos), pattern.substr(pos + 4)};
}

std::vector<DatasetPair> ingest_generic(const fs::path& image_dir,
                                        const fs::path& gt_dir,
                                        const std::string& pattern,
                                        std::ostream& warnings) {
    const auto eq = pattern.find('=');
    if (eq == std::string::npos) {
        throw ParamError(
            "dataset pattern: expected 'IMG_PATTERN=GT_PATTERN', got '" + pattern +
            "'");
    }
    const IdPattern img = split_pattern(pattern.substr(0, eq));
    const std::string gt_template = pattern.substr(eq + 1);
    split_pattern(gt_template);  // validates the {id} placeholder

    std::vector<DatasetPair> pairs;
    for (const fs::path& file : sorted_entries(image_dir)) {
        if (!fs::is_regular_file(file)) {
            continue;
        }
        const std::string name = file.filename().string();
        if (name.size() <= img.prefix.size() + img.suffix.size() ||
            name.compare(0, img.prefix.size(), img.prefix) != 0 ||
            !ends_with(name, img.suffix)) {
            continue;
        }
        const std::string id =
            name.substr(img.prefix.size(),
                        name.size() - img.prefix.size() - img.suffix.size());
        std::string gt_name = gt_template;
        gt_name.replace(gt_name.find("{id}"), 4, id);
        const fs::path gt = gt_dir / gt_name;
        if (!fs::exists(gt)) {
            warnings << "warning: skipping image '" << id << "': no ground truth '"
                     << gt.string() << "'\n";
            continue;
        }
        pairs.push_back({file, gt, id});
    }
    return pairs;
}

}  // namespace

std::vector<DatasetPair> ingest_dataset(DatasetLayout layout,
                                        const fs::path& image_dir,
                                        const fs::path& gt_dir,
                                        const std::string& pattern,
                                        std::ostream& warnings) {
    if (!fs::is_directory(image_dir)) {
        throw IoError("dataset: image directory '" + image_dir.string() +
                      "' does not exist");
    }
    if (layout != DatasetLayout::Ph2 && !fs::is_directory(gt_dir)) {
        throw IoError("dataset: ground-truth directory '" + gt_dir.string() +
                      "' does not exist");
    }
    std::vector<DatasetPair> pairs;
    switch (layout) {
        case DatasetLayout::Ph2:
            pairs = ingest_ph2(image_dir, warnings);
            break;
        case DatasetLayout::Isic2016:
            pairs = ingest_isic(image_dir, gt_dir, warnings);
            break;
        case DatasetLayout::Generic:
            pairs = ingest_generic(image_dir, gt_dir, pattern, warnings);
            break;
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const DatasetPair& a, const DatasetPair& b) {
                  return a.image_id < b.image_id;
              });
    if (pairs.empty()) {
        throw IngestError("dataset: no image/ground-truth pairs found");
    }
    return pairs;
}

namespace {

CorpusRow evaluate_one(const DatasetPair& pair, const PipelineConfig& cfg) {
    CorpusRow row;
    row.image_id = pair.image_id;
    try {
        const Raster image = load_image(pair.image_path);
        const BinaryMask gt = load_mask(pair.ground_truth_path);
        if (gt.width != image.width() || gt.height != image.height()) {
            throw ParamError("ground truth dimensions do not match image");
        }
        const SegmentationResult seg = run_segment(image, cfg, false);
        row.record = metrics(confusion(seg.mask, gt));
        row.record.image_id = pair.image_id;
    } catch (const std::exception& e) {
        row.failed = true;
        row.error_message = e.what();
    }
    return row;
}

}  // namespace

CorpusReport evaluate_corpus(const std::vector<DatasetPair>& pairs,
                             const PipelineConfig& cfg, int jobs,
                             std::ostream& warnings) {
    if (pairs.empty()) {
        throw ParamError("evaluate_corpus: no pairs to evaluate");
    }
    CorpusReport report;
    report.rows.resize(pairs.size());

    const int workers = std::clamp<int>(jobs, 1, static_cast<int>(pairs.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < pairs.size(); ++i) {
            report.rows[i] = evaluate_one(pairs[i], cfg);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const size_t i = next.fetch_add(1);
                    if (i >= pairs.size()) {
                        return;
                    }
                    report.rows[i] = evaluate_one(pairs[i], cfg);
                }
            });
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    double sum_sens = 0.0, sum_spec = 0.0, sum_acc = 0.0, sum_dsc = 0.0;
    size_t n_sens = 0, n_spec = 0, n_acc = 0, n_dsc = 0;
    for (const CorpusRow& row : report.rows) {
        if (row.failed) {
            warnings << "warning: evaluation failed for '" << row.image_id
                     << "': " << row.error_message << "\n";
            continue;
        }
        ++report.evaluated;
        if (row.record.sensitivity) {
            sum_sens += *row.record.sensitivity;
            ++n_sens;
        }
        if (row.record.specificity) {
            sum_spec += *row.record.specificity;
            ++n_spec;
        }
        if (row.record.accuracy) {
            sum_acc += *row.record.accuracy;
            ++n_acc;
        }
        if (row.record.dsc) {
            sum_dsc += *row.record.dsc;
            ++n_dsc;
        }
    }
    report.average.image_id = "average";
    if (n_sens > 0) {
        report.average.sensitivity = sum_sens / n_sens;
    }
    if (n_spec > 0) {
        report.average.specificity = sum_spec / n_spec;
    }
    if (n_acc > 0) {
        report.average.accuracy = sum_acc / n_acc;
    }
    if (n_dsc > 0) {
        report.average.dsc = sum_dsc / n_dsc;
    }
    return report;
}

namespace {

std::string format_metric(const std::optional<double>& value) {
    if (!value) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *value);
    return buf;
}

void append_row(std::string& csv, const std::string& id, const MetricsRecord& r,
                bool failed) {
    csv += id;
    if (failed) {
        csv += ",error,error,error,error\n";
        return;
    }
    csv += ',' + format_metric(r.sensitivity);
    csv += ',' + format_metric(r.specificity);
    csv += ',' + format_metric(r.accuracy);
    csv += ',' + format_metric(r.dsc);
    csv += '\n';
}

}  // namespace

std::string report_to_csv(const CorpusReport& report) {
    std::string csv = "image_id,sensitivity,specificity,accuracy,dsc\n";
    for (const CorpusRow& row : report.rows) {
        append_row(csv, row.image_id, row.record, row.failed);
    }
    append_row(csv, report.average.image_id, report.average, false);
    return csv;
}

}  // namespace lesionseg
