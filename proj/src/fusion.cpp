#include "lesionseg/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

constexpr double kEntropyFloor = 1e-6;  // bits

std::vector<double> histogram01(const Plane& values, int bins) {
    std::vector<double> hist(bins, 0.0);
    for (const double v : values.values()) {
        int bin = static_cast<int>(v * bins);
        bin = std::clamp(bin, 0, bins - 1);
        hist[bin] += 1.0;
    }
    return hist;
}

void require_same_size(const SaliencyMap& a, const SaliencyMap& b, const char* fn) {
    if (!a.values.same_size(b.values)) {
        throw ParamError(std::string(fn) + ": maps have different dimensions");
    }
}

}  // namespace

double entropy(const SaliencyMap& map, int bins) {
    if (bins < 2) {
        throw ParamError("entropy: bins must be >= 2");
    }
    const std::vector<double> hist = histogram01(map.values, bins);
    const double total = static_cast<double>(map.values.values().size());
    double h = 0.0;
    for (const double count : hist) {
        if (count <= 0.0) {
            continue;
        }
        const double p = count / total;
        h -= p * std::log2(p);
    }
    return h;
}

SaliencyMap initial_map(const SaliencyMap& col, const SaliencyMap& feq,
                        bool chart_mode, int entropy_bins) {
    require_same_size(col, feq, "initial_map");
    const SaliencyMap col_n = ensure_normalized(col);
    const SaliencyMap feq_n = ensure_normalized(feq);
    const double w_c = 1.0 / std::max(entropy(col_n, entropy_bins), kEntropyFloor);
    const double w_q = 1.0 / std::max(entropy(feq_n, entropy_bins), kEntropyFloor);
    const int w = col_n.values.width();
    const int h = col_n.values.height();
    Plane combined(w, h);
    for (size_t i = 0; i < combined.values().size(); ++i) {
        if (chart_mode) {
            combined[i] = (w_c * col_n.values[i]) * (w_q * feq_n.values[i]);
        } else {
            combined[i] = w_c * col_n.values[i] + w_q * feq_n.values[i];
        }
    }
    return minmax_normalize(combined);
}

SaliencyMap final_map(const SaliencyMap& initial, const SaliencyMap& coarse,
                      int entropy_bins) {
    require_same_size(initial, coarse, "final_map");
    const SaliencyMap init_n = ensure_normalized(initial);
    const SaliencyMap coarse_n = ensure_normalized(coarse);
    // Floored so a flat map scales instead of annihilating the product.
    const double w_m = std::max(entropy(init_n, entropy_bins), kEntropyFloor);
    const double w_n = std::max(entropy(coarse_n, entropy_bins), kEntropyFloor);
    Plane combined(init_n.values.width(), init_n.values.height());
    for (size_t i = 0; i < combined.values().size(); ++i) {
        combined[i] = (w_m * init_n.values[i]) * (w_n * coarse_n.values[i]);
    }
    return minmax_normalize(combined);
}

double otsu_from_histogram(const std::vector<double>& histogram) {
    const int bins = static_cast<int>(histogram.size());
    if (bins < 2) {
        throw ParamError("otsu_from_histogram: need at least two bins");
    }
    double total = 0.0;
    double moment = 0.0;
    for (int i = 0; i < bins; ++i) {
        if (histogram[i] < 0.0) {
            throw ParamError("otsu_from_histogram: negative bin count");
        }
        total += histogram[i];
        moment += i * histogram[i];
    }
    if (total <= 0.0) {
        throw DegenerateError("otsu_from_histogram: empty histogram");
    }

    // Between-class variance up to a constant factor, kept in count space
    // (no early division) so exactly tied cuts score bit-identically.
    double best_score = 0.0;
    int best_cut = -1;
    double w0 = 0.0;
    double m0 = 0.0;
    for (int cut = 1; cut < bins; ++cut) {
        w0 += histogram[cut - 1];
        m0 += (cut - 1) * histogram[cut - 1];
        const double w1 = total - w0;
        const double m1 = moment - m0;
        if (w0 <= 0.0 || w1 <= 0.0) {
            continue;
        }
        const double diff = m0 * w1 - m1 * w0;
        const double score = diff * diff / (w0 * w1);
        if (score > best_score) {
            best_score = score;
            best_cut = cut;
        }
    }
    if (best_cut < 0 || best_score <= 0.0) {
        throw DegenerateError("otsu_from_histogram: histogram has a single class");
    }
    return static_cast<double>(best_cut) / bins;
}

double otsu_threshold(const SaliencyMap& map, int bins) {
    if (bins < 2) {
        throw ParamError("otsu_threshold: bins must be >= 2");
    }
    return otsu_from_histogram(histogram01(map.values, bins));
}

BinaryMask binarize(const SaliencyMap& map, double threshold) {
    const int w = map.values.width();
    const int h = map.values.height();
    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out.set(x, y, map.values.at(x, y) > threshold);
        }
    }
    return out;
}

namespace {

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy <= radius * radius) {
                offsets.emplace_back(dx, dy);
            }
        }
    }
    return offsets;
}

// Binary dilation treats out-of-bounds as false; erosion requires every
// in-bounds probe to be true and ignores probes past the border.
BinaryMask binary_morph(const BinaryMask& src,
                        const std::vector<std::pair<int, int>>& se, bool dilate) {
    BinaryMask out(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            bool value = !dilate;
            for (const auto& [ox, oy] : se) {
                const int px = x + ox;
                const int py = y + oy;
                if (px < 0 || px >= src.width || py < 0 || py >= src.height) {
                    continue;
                }
                if (dilate && src.at(px, py)) {
                    value = true;
                    break;
                }
                if (!dilate && !src.at(px, py)) {
                    value = false;
                    break;
                }
            }
            out.set(x, y, value);
        }
    }
    return out;
}

BinaryMask fill_holes(const BinaryMask& src) {
    const int w = src.width;
    const int h = src.height;
    // Flood the complement from the border; unreached false pixels are holes.
    std::vector<uint8_t> outside(static_cast<size_t>(w) * h, 0);
    std::deque<std::pair<int, int>> frontier;
    auto push = [&](int x, int y) {
        const size_t idx = static_cast<size_t>(y) * w + x;
        if (!outside[idx] && !src.at(x, y)) {
            outside[idx] = 1;
            frontier.emplace_back(x, y);
        }
    };
    for (int x = 0; x < w; ++x) {
        push(x, 0);
        push(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push(0, y);
        push(w - 1, y);
    }
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop_front();
        if (x > 0) push(x - 1, y);
        if (x + 1 < w) push(x + 1, y);
        if (y > 0) push(x, y - 1);
        if (y + 1 < h) push(x, y + 1);
    }
    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out.set(x, y, src.at(x, y) || !outside[static_cast<size_t>(y) * w + x]);
        }
    }
    return out;
}

BinaryMask largest_component(const BinaryMask& src) {
    const int w = src.width;
    const int h = src.height;
    std::vector<int> label(static_cast<size_t>(w) * h, -1);
    int best_label = -1;
    size_t best_size = 0;
    int next_label = 0;
    std::deque<std::pair<int, int>> frontier;
    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            const size_t sidx = static_cast<size_t>(sy) * w + sx;
            if (!src.at(sx, sy) || label[sidx] >= 0) {
                continue;
            }
            const int current = next_label++;
            size_t size = 0;
            label[sidx] = current;
            frontier.emplace_back(sx, sy);
            while (!frontier.empty()) {
                const auto [x, y] = frontier.front();
                frontier.pop_front();
                ++size;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int px = x + dx;
                        const int py = y + dy;
                        if (px < 0 || px >= w || py < 0 || py >= h) {
                            continue;
                        }
                        const size_t idx = static_cast<size_t>(py) * w + px;
                        if (src.at(px, py) && label[idx] < 0) {
                            label[idx] = current;
                            frontier.emplace_back(px, py);
                        }
                    }
                }
            }
            if (size > best_size) {
                best_size = size;
                best_label = current;
            }
        }
    }
    BinaryMask out(w, h);
    if (best_label >= 0) {
        for (size_t i = 0; i < label.size(); ++i) {
            if (label[i] == best_label) {
                out.mask[i] = 1;
            }
        }
    }
    return out;
}

}  // namespace

BinaryMask postprocess_mask(const BinaryMask& mask, int se_radius,
                            bool keep_largest) {
    if (se_radius < 1) {
        throw ParamError("postprocess_mask: se_radius must be >= 1");
    }
    const auto se = disk_offsets(se_radius);
    // One open/close/fill/select sweep is not a fixpoint by itself: the next
    // opening may erode necks the previous closing built. Repeat the sweep
    // until the mask stops changing so the operator is idempotent.
    BinaryMask result = mask;
    for (int pass = 0; pass < 16; ++pass) {
        BinaryMask next = binary_morph(result, se, false);  // erode
        next = binary_morph(next, se, true);                // dilate -> opening
        next = binary_morph(next, se, true);                // dilate
        next = binary_morph(next, se, false);               // erode -> closing
        next = fill_holes(next);
        if (keep_largest) {
            next = largest_component(next);
        }
        const bool stable = next.mask == result.mask;
        result = std::move(next);
        if (stable) {
            break;
        }
    }
    return result;
}

}  // namespace lesionseg
