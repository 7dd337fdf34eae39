#include "lesionseg/plane_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lesionseg/errors.hpp"

namespace lesionseg {

double plane_min(const Plane& p) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) lo = std::min(lo, p[i]);
    return lo;
}

double plane_max(const Plane& p) {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) hi = std::max(hi, p[i]);
    return hi;
}

double plane_mean(const Plane& p) {
    if (p.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += p[i];
    return sum / static_cast<double>(p.size());
}

double plane_stddev(const Plane& p) {
    if (p.empty()) return 0.0;
    const double mu = plane_mean(p);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - mu;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(p.size()));
}

bool plane_finite(const Plane& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!std::isfinite(p[i])) return false;
    return true;
}

void clamp01_inplace(Plane& p) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], 0.0, 1.0);
}

Plane box_mean(const Plane& src, int radius) {
    if (radius < 1) throw ParamError("box_mean: radius must be >= 1");
    const int w = src.width(), h = src.height();
    // (w+1) x (h+1) summed-area table
    std::vector<double> ii(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
    auto iat = [&](int x, int y) -> double& {
        return ii[static_cast<std::size_t>(y) * (w + 1) + x];
    };
    for (int y = 0; y < h; ++y) {
        double row = 0.0;
        for (int x = 0; x < w; ++x) {
            row += src.at(x, y);
            iat(x + 1, y + 1) = iat(x + 1, y) + row;
        }
    }
    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            const double s = iat(x1 + 1, y1 + 1) - iat(x0, y1 + 1) - iat(x1 + 1, y0) + iat(x0, y0);
            out.at(x, y) = s / (static_cast<double>(y1 - y0 + 1) * (x1 - x0 + 1));
        }
    }
    return out;
}

namespace {

// Mirror index into [0, n) without repeating the edge sample (reflect-101).
int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i = std::abs(i) % period;
    return i < n ? i : period - i;
}

}  // namespace

Plane gaussian_blur(const Plane& src, double sigma) {
    if (sigma <= 0.0) return src;
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        kernel[i + radius] = v;
        sum += v;
    }
    for (auto& k : kernel) k /= sum;

    const int w = src.width(), h = src.height();
    Plane tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * src.at(reflect_index(x + i, w), y);
            tmp.at(x, y) = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.at(x, reflect_index(y + i, h));
            out.at(x, y) = acc;
        }
    return out;
}

Plane convolve_reflect(const Plane& src, const Plane& kernel) {
    if (kernel.width() % 2 == 0 || kernel.height() % 2 == 0)
        throw ParamError("convolve_reflect: kernel dimensions must be odd");
    const int w = src.width(), h = src.height();
    const int rx = kernel.width() / 2, ry = kernel.height() / 2;
    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int ky = -ry; ky <= ry; ++ky) {
                const int sy = reflect_index(y + ky, h);
                for (int kx = -rx; kx <= rx; ++kx) {
                    const int sx = reflect_index(x + kx, w);
                    acc += kernel.at(kx + rx, ky + ry) * src.at(sx, sy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

Plane resize_bilinear(const Plane& src, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) throw ParamError("resize_bilinear: output dimensions must be positive");
    const int w = src.width(), h = src.height();
    if (out_w == w && out_h == h) return src;
    Plane out(out_w, out_h);
    const double sx = out_w > 1 ? static_cast<double>(w - 1) / (out_w - 1) : 0.0;
    const double sy = out_h > 1 ? static_cast<double>(h - 1) / (out_h - 1) : 0.0;
    for (int y = 0; y < out_h; ++y) {
        const double fy = y * sy;
        const int y0 = std::min(static_cast<int>(fy), h - 1);
        const int y1 = std::min(y0 + 1, h - 1);
        const double dy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            const double fx = x * sx;
            const int x0 = std::min(static_cast<int>(fx), w - 1);
            const int x1 = std::min(x0 + 1, w - 1);
            const double dx = fx - x0;
            const double top = src.at(x0, y0) * (1.0 - dx) + src.at(x1, y0) * dx;
            const double bot = src.at(x0, y1) * (1.0 - dx) + src.at(x1, y1) * dx;
            out.at(x, y) = top * (1.0 - dy) + bot * dy;
        }
    }
    return out;
}

BinaryMask resize_nearest(const BinaryMask& src, int out_w, int out_h) {
    if (out_w < 1 || out_h < 1) throw ParamError("resize_nearest: output dimensions must be positive");
    if (out_w == src.width && out_h == src.height) return src;
    BinaryMask out(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        int sy = static_cast<int>((static_cast<double>(y) + 0.5) * src.height / out_h);
        sy = std::min(sy, src.height - 1);
        for (int x = 0; x < out_w; ++x) {
            int sx = static_cast<int>((static_cast<double>(x) + 0.5) * src.width / out_w);
            sx = std::min(sx, src.width - 1);
            out.set(x, y, src.at(sx, sy));
        }
    }
    return out;
}

}  // namespace lesionseg
