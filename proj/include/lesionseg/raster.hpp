#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lesionseg {

/// Single H x W plane of double-precision values, row-major.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    bool same_size(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

enum class PlaneTag { Rgb, Gray, Opponent, Lab, Map };

/// Multi-plane image; all planes share the same dimensions.
struct Raster {
    PlaneTag tag = PlaneTag::Gray;
    std::vector<Plane> planes;

    int width() const { return planes.empty() ? 0 : planes.front().width(); }
    int height() const { return planes.empty() ? 0 : planes.front().height(); }
};

/// Per-pixel saliency scores; `normalized` marks a map already scaled to [0,1].
struct SaliencyMap {
    Plane values;
    bool normalized = false;

    int width() const { return values.width(); }
    int height() const { return values.height(); }
};

/// H x W boolean mask stored as bytes (0/1).
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h),
          mask(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

    bool at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { mask[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::size_t count_true() const {
        std::size_t n = 0;
        for (auto b : mask) n += b;
        return n;
    }
};

/// Rescale to [0,1] via (v - min) / (max - min). A constant plane maps to all
/// zeros: it carries no signal to rank.
SaliencyMap minmax_normalize(const Plane& plane);
SaliencyMap minmax_normalize(const SaliencyMap& map);

/// Returns the map unchanged when its normalized flag is set, otherwise
/// min-max normalizes it.
SaliencyMap ensure_normalized(const SaliencyMap& map);

}  // namespace lesionseg
