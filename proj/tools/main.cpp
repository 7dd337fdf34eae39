#include <string>

#include "CLI11.hpp"
#include "lesionseg/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Saliency-based skin lesion segmentation"};
    app.require_subcommand(1);

    lesionseg::SegmentOptions seg;
    std::string seg_config, seg_dump;
    CLI::App* segment = app.add_subcommand("segment", "Segment one dermoscopy image");
    segment->add_option("image", seg.image_path, "Input image (PNG/JPEG/BMP)")
        ->required();
    segment->add_option("output", seg.out_mask_path, "Output mask PNG")->required();
    segment->add_option("--config", seg_config, "Configuration file");
    segment->add_option("--dump-intermediate", seg_dump,
                        "Directory receiving every intermediate map as PNG");
    segment->add_flag("--chart-mode", seg.chart_mode,
                      "Multiply instead of add when fusing spatial and frequency maps");
    segment->add_flag("--print-config", seg.print_config,
                      "Echo the effective configuration to stdout");

    lesionseg::EvaluateOptions eval;
    std::string eval_config;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Score a dataset and write a CSV report");
    evaluate->add_option("image_dir", eval.image_dir, "Image directory (dataset root for ph2)")
        ->required();
    evaluate->add_option("report", eval.report_path, "Output CSV path")->required();
    evaluate->add_option("--layout", eval.layout, "Dataset layout: ph2, isic2016 or generic")
        ->required();
    evaluate->add_option("--gt-dir", eval.gt_dir,
                         "Ground-truth directory (isic2016 and generic layouts)");
    evaluate->add_option("--pattern", eval.pattern,
                         "generic layout: 'IMG_PATTERN=GT_PATTERN' with {id}");
    evaluate->add_option("--config", eval_config, "Configuration file");
    evaluate->add_option("--jobs", eval.jobs, "Worker threads (default 1)");
    evaluate->add_flag("--chart-mode", eval.chart_mode,
                       "Multiply instead of add when fusing spatial and frequency maps");
    evaluate->add_flag("--print-config", eval.print_config,
                       "Echo the effective configuration to stdout");

    lesionseg::OverlayOptions overlay;
    CLI::App* over = app.add_subcommand("overlay", "Trace a mask boundary onto an image");
    over->add_option("image", overlay.image_path, "Input image")->required();
    over->add_option("mask", overlay.mask_path, "Mask PNG")->required();
    over->add_option("output", overlay.out_path, "Output image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return lesionseg::kExitUsage;
    }

    if (segment->parsed()) {
        if (!seg_config.empty()) {
            seg.config_path = seg_config;
        }
        if (!seg_dump.empty()) {
            seg.dump_dir = seg_dump;
        }
        return lesionseg::cmd_segment(seg);
    }
    if (evaluate->parsed()) {
        if (!eval_config.empty()) {
            eval.config_path = eval_config;
        }
        return lesionseg::cmd_evaluate(eval);
    }
    return lesionseg::cmd_overlay(overlay);
}
