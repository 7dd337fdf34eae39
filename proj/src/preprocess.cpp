#include "lesionseg/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

#include "lesionseg/errors.hpp"
#include "lesionseg/plane_ops.hpp"

namespace lesionseg {

namespace {

// Rasterize a centered line segment of the given pixel length at `angle_deg`
// (0 = horizontal) into symmetric integer offsets, origin included.
std::vector<std::pair<int, int>> line_offsets(int length, double angle_deg) {
    const double rad = angle_deg * M_PI / 180.0;
    const int half = (length - 1) / 2;
    const int ex = static_cast<int>(std::lround(half * std::cos(rad)));
    const int ey = static_cast<int>(std::lround(half * std::sin(rad)));
    std::vector<std::pair<int, int>> offsets;
    // Bresenham from the origin to (ex, ey), then mirror for symmetry.
    int x = 0, y = 0;
    const int dx = std::abs(ex), dy = -std::abs(ey);
    const int sx = ex >= 0 ? 1 : -1, sy = ey >= 0 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        offsets.emplace_back(x, y);
        if (x != 0 || y != 0) {
            offsets.emplace_back(-x, -y);
        }
        if (x == ex && y == ey) {
            break;
        }
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
    return offsets;
}

enum class Extreme { Max, Min };

// Grayscale dilation (Max) or erosion (Min) with an arbitrary offset set;
// offsets falling outside the image are simply skipped (window clipping).
Plane morph(const Plane& src, const std::vector<std::pair<int, int>>& se,
            Extreme mode) {
    const int w = src.width();
    const int h = src.height();
    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = (mode == Extreme::Max)
                           ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
            for (const auto& [ox, oy] : se) {
                const int px = x + ox;
                const int py = y + oy;
                if (px < 0 || px >= w || py < 0 || py >= h) {
                    continue;
                }
                const double s = src.at(px, py);
                v = (mode == Extreme::Max) ? std::max(v, s) : std::min(v, s);
            }
            out.at(x, y) = v;
        }
    }
    return out;
}

Plane closing(const Plane& src, const std::vector<std::pair<int, int>>& se) {
    return morph(morph(src, se, Extreme::Max), se, Extreme::Min);
}

void require_rgb(const Raster& img, const char* fn) {
    if (img.tag != PlaneTag::Rgb || img.planes.size() != 3) {
        throw SemanticError(std::string(fn) + ": expected an RGB raster");
    }
}

}  // namespace

HairMask detect_hair_mask(const Raster& img, int se_length, double threshold) {
    require_rgb(img, "detect_hair_mask");
    const int w = img.width();
    const int h = img.height();
    if (se_length < 3 || se_length % 2 == 0) {
        throw ParamError("detect_hair_mask: se_length must be odd and >= 3");
    }
    if (se_length > std::min(w, h)) {
        throw ParamError("detect_hair_mask: se_length exceeds image size");
    }

    Plane delta(w, h, 0.0);
    for (const double angle : {0.0, 60.0, 120.0}) {
        const auto se = line_offsets(se_length, angle);
        for (const Plane& channel : img.planes) {
            const Plane closed = closing(channel, se);
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double d = closed.at(x, y) - channel.at(x, y);
                    if (d > delta.at(x, y)) {
                        delta.at(x, y) = d;
                    }
                }
            }
        }
    }

    HairMask out{BinaryMask(w, h), 0.0};
    size_t flagged = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const bool hit = delta.at(x, y) > threshold;
            out.mask.set(x, y, hit);
            flagged += hit ? 1 : 0;
        }
    }
    out.coverage = static_cast<double>(flagged) / (static_cast<double>(w) * h);
    return out;
}

Raster inpaint_hair(const Raster& img, const HairMask& hair) {
    const int w = img.width();
    const int h = img.height();
    if (hair.mask.width != w || hair.mask.height != h) {
        throw ParamError("inpaint_hair: mask dimensions do not match image");
    }
    if (hair.mask.count_true() == static_cast<size_t>(w) * h) {
        throw InpaintError("inpaint_hair: mask covers the entire image");
    }

    Raster out = img;
    const size_t n_planes = img.planes.size();
    std::vector<double> sums(n_planes);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!hair.mask.at(x, y)) {
                continue;
            }
            // Grow the square window until enough clean donors are inside.
            int half = 2;
            while (true) {
                std::fill(sums.begin(), sums.end(), 0.0);
                int donors = 0;
                const int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
                const int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
                for (int py = y0; py <= y1; ++py) {
                    for (int px = x0; px <= x1; ++px) {
                        if (hair.mask.at(px, py)) {
                            continue;
                        }
                        ++donors;
                        for (size_t p = 0; p < n_planes; ++p) {
                            sums[p] += img.planes[p].at(px, py);
                        }
                    }
                }
                if (donors >= 4) {
                    for (size_t p = 0; p < n_planes; ++p) {
                        out.planes[p].at(x, y) = sums[p] / donors;
                    }
                    break;
                }
                ++half;
            }
        }
    }
    return out;
}

namespace {

Raster downsample(const Raster& src, int out_w, int out_h) {
    Raster out = src;
    for (Plane& p : out.planes) {
        p = resize_bilinear(p, out_w, out_h);
    }
    return out;
}

// Exact guided filter with a single-plane guide, at the current resolution.
// Returns the box-filtered linear coefficients (a, b) so the caller can apply
// them at a finer scale.
void gray_guide_coeffs(const Plane& guide, const Plane& input, int radius,
                       double epsilon, Plane& mean_a, Plane& mean_b) {
    const int w = guide.width();
    const int h = guide.height();
    const Plane mean_i = box_mean(guide, radius);
    const Plane mean_p = box_mean(input, radius);
    Plane ii(w, h), ip(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            ii.at(x, y) = guide.at(x, y) * guide.at(x, y);
            ip.at(x, y) = guide.at(x, y) * input.at(x, y);
        }
    }
    const Plane corr_ii = box_mean(ii, radius);
    const Plane corr_ip = box_mean(ip, radius);
    Plane a(w, h), b(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double var_i = corr_ii.at(x, y) - mean_i.at(x, y) * mean_i.at(x, y);
            const double cov_ip = corr_ip.at(x, y) - mean_i.at(x, y) * mean_p.at(x, y);
            const double av = cov_ip / (var_i + epsilon);
            a.at(x, y) = av;
            b.at(x, y) = mean_p.at(x, y) - av * mean_i.at(x, y);
        }
    }
    mean_a = box_mean(a, radius);
    mean_b = box_mean(b, radius);
}

// Color-guide variant: per pixel solves (Sigma + eps*U) a = cov, where Sigma
// is the 3x3 guide covariance, via the adjugate inverse.
void color_guide_coeffs(const Raster& guide, const Plane& input, int radius,
                        double epsilon, std::vector<Plane>& mean_a, Plane& mean_b) {
    const int w = guide.width();
    const int h = guide.height();
    const Plane& g0 = guide.planes[0];
    const Plane& g1 = guide.planes[1];
    const Plane& g2 = guide.planes[2];
    const Plane mean_p = box_mean(input, radius);
    const Plane m0 = box_mean(g0, radius);
    const Plane m1 = box_mean(g1, radius);
    const Plane m2 = box_mean(g2, radius);

    auto product_mean = [&](const Plane& u, const Plane& v) {
        Plane prod(w, h);
        for (size_t i = 0; i < prod.values().size(); ++i) {
            prod[i] = u[i] * v[i];
        }
        return box_mean(prod, radius);
    };
    const Plane c00 = product_mean(g0, g0);
    const Plane c01 = product_mean(g0, g1);
    const Plane c02 = product_mean(g0, g2);
    const Plane c11 = product_mean(g1, g1);
    const Plane c12 = product_mean(g1, g2);
    const Plane c22 = product_mean(g2, g2);
    const Plane p0 = product_mean(g0, input);
    const Plane p1 = product_mean(g1, input);
    const Plane p2 = product_mean(g2, input);

    std::vector<Plane> a(3, Plane(w, h));
    Plane b(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double mu0 = m0.at(x, y), mu1 = m1.at(x, y), mu2 = m2.at(x, y);
            // Covariance matrix entries plus regularization on the diagonal.
            const double s00 = c00.at(x, y) - mu0 * mu0 + epsilon;
            const double s01 = c01.at(x, y) - mu0 * mu1;
            const double s02 = c02.at(x, y) - mu0 * mu2;
            const double s11 = c11.at(x, y) - mu1 * mu1 + epsilon;
            const double s12 = c12.at(x, y) - mu1 * mu2;
            const double s22 = c22.at(x, y) - mu2 * mu2 + epsilon;
            const double mp = mean_p.at(x, y);
            const double v0 = p0.at(x, y) - mu0 * mp;
            const double v1 = p1.at(x, y) - mu1 * mp;
            const double v2 = p2.at(x, y) - mu2 * mp;
            // Adjugate inverse of the symmetric 3x3 system.
            const double a00 = s11 * s22 - s12 * s12;
            const double a01 = s02 * s12 - s01 * s22;
            const double a02 = s01 * s12 - s02 * s11;
            const double a11 = s00 * s22 - s02 * s02;
            const double a12 = s01 * s02 - s00 * s12;
            const double a22 = s00 * s11 - s01 * s01;
            const double det = s00 * a00 + s01 * a01 + s02 * a02;
            const double inv_det = 1.0 / det;
            const double av0 = (a00 * v0 + a01 * v1 + a02 * v2) * inv_det;
            const double av1 = (a01 * v0 + a11 * v1 + a12 * v2) * inv_det;
            const double av2 = (a02 * v0 + a12 * v1 + a22 * v2) * inv_det;
            a[0].at(x, y) = av0;
            a[1].at(x, y) = av1;
            a[2].at(x, y) = av2;
            b.at(x, y) = mp - av0 * mu0 - av1 * mu1 - av2 * mu2;
        }
    }
    mean_a[0] = box_mean(a[0], radius);
    mean_a[1] = box_mean(a[1], radius);
    mean_a[2] = box_mean(a[2], radius);
    mean_b = box_mean(b, radius);
}

}  // namespace

Raster fast_guided_filter(const Raster& guide, const Raster& input,
                          const GuidedFilterParams& params) {
    const int w = guide.width();
    const int h = guide.height();
    if (input.width() != w || input.height() != h) {
        throw ParamError("fast_guided_filter: guide and input dimensions differ");
    }
    if (guide.planes.size() != 1 && guide.planes.size() != 3) {
        throw ParamError("fast_guided_filter: guide must have 1 or 3 planes");
    }
    if (params.radius < 1) {
        throw ParamError("fast_guided_filter: radius must be >= 1");
    }
    if (!(params.epsilon > 0.0)) {
        throw ParamError("fast_guided_filter: epsilon must be > 0");
    }
    if (params.subsample < 1) {
        throw ParamError("fast_guided_filter: subsample must be >= 1");
    }

    const int s = params.subsample;
    const int sub_w = std::max(1, static_cast<int>(std::lround(static_cast<double>(w) / s)));
    const int sub_h = std::max(1, static_cast<int>(std::lround(static_cast<double>(h) / s)));
    const int sub_r = std::max(1, static_cast<int>(std::lround(static_cast<double>(params.radius) / s)));
    const bool subsampled = (s > 1);
    const Raster guide_s = subsampled ? downsample(guide, sub_w, sub_h) : guide;

    Raster out = input;
    const bool color_guide = (guide.planes.size() == 3);
    for (size_t pi = 0; pi < input.planes.size(); ++pi) {
        const Plane input_s = subsampled
                                  ? resize_bilinear(input.planes[pi], sub_w, sub_h)
                                  : input.planes[pi];
        if (color_guide) {
            std::vector<Plane> mean_a(3, Plane(1, 1));
            Plane mean_b(1, 1);
            color_guide_coeffs(guide_s, input_s, sub_r, params.epsilon, mean_a, mean_b);
            if (subsampled) {
                for (Plane& p : mean_a) {
                    p = resize_bilinear(p, w, h);
                }
                mean_b = resize_bilinear(mean_b, w, h);
            }
            Plane& q = out.planes[pi];
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    q.at(x, y) = mean_a[0].at(x, y) * guide.planes[0].at(x, y) +
                                 mean_a[1].at(x, y) * guide.planes[1].at(x, y) +
                                 mean_a[2].at(x, y) * guide.planes[2].at(x, y) +
                                 mean_b.at(x, y);
                }
            }
        } else {
            Plane mean_a(1, 1), mean_b(1, 1);
            gray_guide_coeffs(guide_s.planes[0], input_s, sub_r, params.epsilon,
                              mean_a, mean_b);
            if (subsampled) {
                mean_a = resize_bilinear(mean_a, w, h);
                mean_b = resize_bilinear(mean_b, w, h);
            }
            Plane& q = out.planes[pi];
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    q.at(x, y) = mean_a.at(x, y) * guide.planes[0].at(x, y) +
                                 mean_b.at(x, y);
                }
            }
        }
    }
    return out;
}

Raster smooth_image(const Raster& img, const GuidedFilterParams& params) {
    Raster out = fast_guided_filter(img, img, params);
    for (Plane& p : out.planes) {
        clamp01_inplace(p);
    }
    return out;
}

}  // namespace lesionseg
