#include "lesionseg/commands.hpp"

#include <fstream>
#include <iostream>

#include "lesionseg/dataset.hpp"
#include "lesionseg/errors.hpp"
#include "lesionseg/io.hpp"
#include "lesionseg/pipeline.hpp"

namespace lesionseg {

namespace fs = std::filesystem;

namespace {

PipelineConfig resolve_config(const std::optional<fs::path>& config_path,
                              bool chart_mode, bool print_config) {
    PipelineConfig cfg;
    if (config_path) {
        cfg = load_config(*config_path);
    }
    if (chart_mode) {
        cfg.fusion_chart_mode = true;
    }
    if (print_config) {
        std::cout << serialize_config(cfg);
    }
    return cfg;
}

// Maps the error taxonomy onto exit codes; prints the diagnostic.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IngestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
}

std::string format_cell(const std::optional<double>& v) {
    if (!v) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return buf;
}

}  // namespace

int cmd_segment(const SegmentOptions& opts) {
    return guarded([&] {
        const PipelineConfig cfg =
            resolve_config(opts.config_path, opts.chart_mode, opts.print_config);
        const Raster image = load_image(opts.image_path);
        const SegmentationResult result =
            run_segment(image, cfg, opts.dump_dir.has_value());
        save_gray(result.mask, opts.out_mask_path.string());
        if (opts.dump_dir) {
            fs::create_directories(*opts.dump_dir);
            for (const auto& [name, plane] : result.intermediates) {
                save_gray(plane, (*opts.dump_dir / (name + ".png")).string());
            }
        }
        return kExitOk;
    });
}

int cmd_evaluate(const EvaluateOptions& opts) {
    return guarded([&] {
        DatasetLayout layout;
        if (opts.layout == "ph2") {
            layout = DatasetLayout::Ph2;
        } else if (opts.layout == "isic2016") {
            layout = DatasetLayout::Isic2016;
        } else if (opts.layout == "generic") {
            layout = DatasetLayout::Generic;
        } else {
            throw ParamError("evaluate: unknown layout '" + opts.layout +
                             "' (expected ph2, isic2016 or generic)");
        }
        if (opts.jobs < 1) {
            throw ParamError("evaluate: --jobs must be >= 1");
        }
        const PipelineConfig cfg =
            resolve_config(opts.config_path, opts.chart_mode, opts.print_config);

        const std::vector<DatasetPair> pairs = ingest_dataset(
            layout, opts.image_dir, opts.gt_dir, opts.pattern, std::cerr);
        const CorpusReport report = evaluate_corpus(pairs, cfg, opts.jobs, std::cerr);
        if (report.evaluated == 0) {
            std::cerr << "error: every image failed to evaluate\n";
            return kExitPipeline;
        }

        std::ofstream out(opts.report_path);
        if (!out) {
            throw IoError("evaluate: cannot write report '" +
                          opts.report_path.string() + "'");
        }
        out << report_to_csv(report);
        out.close();

        std::cout << "average," << format_cell(report.average.sensitivity) << ","
                  << format_cell(report.average.specificity) << ","
                  << format_cell(report.average.accuracy) << ","
                  << format_cell(report.average.dsc) << "\n";
        return kExitOk;
    });
}

int cmd_overlay(const OverlayOptions& opts) {
    return guarded([&] {
        Raster image = load_image(opts.image_path);
        const BinaryMask mask = load_mask(opts.mask_path);
        if (mask.width != image.width() || mask.height != image.height()) {
            throw ParamError("overlay: mask dimensions do not match image");
        }
        const int w = mask.width;
        const int h = mask.height;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!mask.at(x, y)) {
                    continue;
                }
                // Boundary: a true pixel with a false (or out-of-image)
                // 4-neighbor.
                const bool boundary =
                    x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                    !mask.at(x - 1, y) || !mask.at(x + 1, y) ||
                    !mask.at(x, y - 1) || !mask.at(x, y + 1);
                if (boundary) {
                    image.planes[0].at(x, y) = 0.0;
                    image.planes[1].at(x, y) = 1.0;
                    image.planes[2].at(x, y) = 0.0;
                }
            }
        }
        save_rgb(image, opts.out_path.string());
        return kExitOk;
    });
}

}  // namespace lesionseg
