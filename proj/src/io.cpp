#include "lesionseg/io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <filesystem>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

cv::Mat decode_file(const std::string& path, int flags) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec)
        throw IoError("cannot read '" + path + "': no such file");
    cv::Mat m = cv::imread(path, flags);
    if (m.empty())
        throw FormatError("cannot decode '" + path + "'");
    return m;
}

std::uint8_t quantize(double v) {
    // round half away from zero, clamped to [0,255]
    const double scaled = std::round(v * 255.0);
    if (scaled <= 0.0) return 0;
    if (scaled >= 255.0) return 255;
    return static_cast<std::uint8_t>(scaled);
}

void write_png(const cv::Mat& m, const std::string& path) {
    bool ok = false;
    try {
        ok = cv::imwrite(path, m);
    } catch (const cv::Exception& e) {
        throw IoError("cannot write '" + path + "': " + e.what());
    }
    if (!ok) throw IoError("cannot write '" + path + "'");
}

}  // namespace

Raster load_image(const std::string& path) {
    cv::Mat bgr = decode_file(path, cv::IMREAD_COLOR);

    Raster out;
    out.tag = PlaneTag::Rgb;
    out.planes.assign(3, Plane(bgr.cols, bgr.rows));
    for (int y = 0; y < bgr.rows; ++y) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            out.planes[0].at(x, y) = row[x][2] / 255.0;  // R
            out.planes[1].at(x, y) = row[x][1] / 255.0;  // G
            out.planes[2].at(x, y) = row[x][0] / 255.0;  // B
        }
    }
    return out;
}

void save_gray(const Plane& plane, const std::string& path) {
    cv::Mat m(plane.height(), plane.width(), CV_8UC1);
    for (int y = 0; y < plane.height(); ++y) {
        std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < plane.width(); ++x) row[x] = quantize(plane.at(x, y));
    }
    write_png(m, path);
}

void save_gray(const BinaryMask& mask, const std::string& path) {
    cv::Mat m(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y) {
        std::uint8_t* row = m.ptr<std::uint8_t>(y);
        for (int x = 0; x < mask.width; ++x) row[x] = mask.at(x, y) ? 255 : 0;
    }
    write_png(m, path);
}

void save_rgb(const Raster& img, const std::string& path) {
    if (img.tag != PlaneTag::Rgb || img.planes.size() != 3)
        throw SemanticError("save_rgb: expected a 3-plane RGB raster");
    cv::Mat m(img.height(), img.width(), CV_8UC3);
    for (int y = 0; y < img.height(); ++y) {
        cv::Vec3b* row = m.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width(); ++x) {
            row[x][2] = quantize(img.planes[0].at(x, y));
            row[x][1] = quantize(img.planes[1].at(x, y));
            row[x][0] = quantize(img.planes[2].at(x, y));
        }
    }
    write_png(m, path);
}

BinaryMask load_mask(const std::string& path) {
    cv::Mat gray = decode_file(path, cv::IMREAD_GRAYSCALE);
    BinaryMask out(gray.cols, gray.rows);
    for (int y = 0; y < gray.rows; ++y) {
        const std::uint8_t* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x) out.set(x, y, row[x] > 127);
    }
    return out;
}

}  // namespace lesionseg
