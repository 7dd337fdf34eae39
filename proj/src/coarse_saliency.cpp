#include "lesionseg/coarse_saliency.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lesionseg/errors.hpp"

namespace lesionseg {

namespace {

struct FeatureGrid {
    int cols = 0;
    int rows = 0;
    int patch_size = 0;
    std::vector<PatchFeature> cells;  // row-major

    const PatchFeature& cell(int gx, int gy) const { return cells[gy * cols + gx]; }
};

// Mean 6-d feature of every cell of the ceil-grid covering the image.
FeatureGrid grid_features(const OpponentPlanes& opp, const LabPlanes& lab,
                          int patch_size) {
    const int w = opp.width();
    const int h = opp.height();
    FeatureGrid grid;
    grid.patch_size = patch_size;
    grid.cols = (w + patch_size - 1) / patch_size;
    grid.rows = (h + patch_size - 1) / patch_size;
    grid.cells.resize(static_cast<size_t>(grid.cols) * grid.rows);
    const Plane* planes[6] = {&opp.rg, &opp.by, &opp.i, &lab.l, &lab.a, &lab.b};
    for (int gy = 0; gy < grid.rows; ++gy) {
        for (int gx = 0; gx < grid.cols; ++gx) {
            const int x0 = gx * patch_size;
            const int y0 = gy * patch_size;
            const int x1 = std::min(w, x0 + patch_size);
            const int y1 = std::min(h, y0 + patch_size);
            const double count = static_cast<double>(x1 - x0) * (y1 - y0);
            PatchFeature f{};
            for (int c = 0; c < 6; ++c) {
                double sum = 0.0;
                for (int y = y0; y < y1; ++y) {
                    for (int x = x0; x < x1; ++x) {
                        sum += planes[c]->at(x, y);
                    }
                }
                f[c] = sum / count;
            }
            grid.cells[static_cast<size_t>(gy) * grid.cols + gx] = f;
        }
    }
    return grid;
}

double squared_distance(const PatchFeature& a, const PatchFeature& b) {
    double acc = 0.0;
    for (int c = 0; c < 6; ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
    }
    return acc;
}

}  // namespace

PatchSet extract_border_patches(const OpponentPlanes& opp, const LabPlanes& lab,
                                int patch_size) {
    if (patch_size < 4) {
        throw ParamError("extract_border_patches: patch_size must be >= 4");
    }
    if (opp.width() != lab.width() || opp.height() != lab.height()) {
        throw ParamError("extract_border_patches: feature plane dimensions differ");
    }
    if (opp.width() < 2 * patch_size || opp.height() < 2 * patch_size) {
        throw ParamError("extract_border_patches: image too small for a border band");
    }
    const FeatureGrid grid = grid_features(opp, lab, patch_size);
    PatchSet set;
    set.patch_size = patch_size;
    for (int gy = 0; gy < grid.rows; ++gy) {
        for (int gx = 0; gx < grid.cols; ++gx) {
            const bool border = gy == 0 || gy == grid.rows - 1 || gx == 0 ||
                                gx == grid.cols - 1;
            if (border) {
                set.patches.push_back({gx, gy, grid.cell(gx, gy)});
            }
        }
    }
    return set;
}

BackgroundModel cluster_background(const PatchSet& patches, uint64_t seed) {
    const size_t n = patches.patches.size();
    constexpr int kGroups = 4;
    if (n < kGroups) {
        throw ModelError("cluster_background: need at least four patches");
    }

    std::mt19937_64 rng(seed);
    auto canonical = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    auto uniform_index = [&](size_t count) {
        return std::min(count - 1, static_cast<size_t>(canonical() * count));
    };

    // k-means++ seeding.
    std::array<PatchFeature, kGroups> centroids;
    centroids[0] = patches.patches[uniform_index(n)].feature;
    std::vector<double> d2(n);
    for (int k = 1; k < kGroups; ++k) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                best = std::min(best, squared_distance(patches.patches[i].feature,
                                                       centroids[j]));
            }
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            centroids[k] = patches.patches[uniform_index(n)].feature;
            continue;
        }
        const double r = canonical() * total;
        double acc = 0.0;
        size_t pick = n - 1;
        for (size_t i = 0; i < n; ++i) {
            acc += d2[i];
            if (acc >= r) {
                pick = i;
                break;
            }
        }
        centroids[k] = patches.patches[pick].feature;
    }

    // Lloyd iterations; ties go to the lowest group index, empty groups keep
    // their previous centroid.
    std::vector<int> assignment(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_k = 0;
            for (int k = 0; k < kGroups; ++k) {
                const double d = squared_distance(patches.patches[i].feature,
                                                  centroids[k]);
                if (d < best) {
                    best = d;
                    best_k = k;
                }
            }
            assignment[i] = best_k;
        }
        std::array<PatchFeature, kGroups> sums{};
        std::array<int, kGroups> counts{};
        for (size_t i = 0; i < n; ++i) {
            for (int c = 0; c < 6; ++c) {
                sums[assignment[i]][c] += patches.patches[i].feature[c];
            }
            ++counts[assignment[i]];
        }
        double shift = 0.0;
        for (int k = 0; k < kGroups; ++k) {
            if (counts[k] == 0) {
                continue;
            }
            PatchFeature next;
            for (int c = 0; c < 6; ++c) {
                next[c] = sums[k][c] / counts[k];
            }
            shift = std::max(shift, std::sqrt(squared_distance(next, centroids[k])));
            centroids[k] = next;
        }
        if (shift < 1e-8) {
            break;
        }
    }

    BackgroundModel model;
    for (int k = 0; k < kGroups; ++k) {
        BackgroundGroup& group = model.groups[k];
        group.centroid = centroids[k];
        group.member_count = 0;
        for (size_t i = 0; i < n; ++i) {
            if (assignment[i] == k) {
                ++group.member_count;
            }
        }
        // Identity basis, zero spread, unless the group has real extent.
        for (int j = 0; j < 6; ++j) {
            group.eigenvectors[j] = PatchFeature{};
            group.eigenvectors[j][j] = 1.0;
            group.eigenvalues[j] = 0.0;
        }
        if (group.member_count < 2) {
            continue;
        }
        Eigen::Matrix<double, 6, 6> cov = Eigen::Matrix<double, 6, 6>::Zero();
        for (size_t i = 0; i < n; ++i) {
            if (assignment[i] != k) {
                continue;
            }
            Eigen::Matrix<double, 6, 1> d;
            for (int c = 0; c < 6; ++c) {
                d(c) = patches.patches[i].feature[c] - centroids[k][c];
            }
            cov += d * d.transpose();
        }
        cov /= group.member_count;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> solver(cov);
        // Eigen reports ascending order; store descending.
        for (int j = 0; j < 6; ++j) {
            const int src = 5 - j;
            group.eigenvalues[j] = std::max(0.0, solver.eigenvalues()(src));
            for (int c = 0; c < 6; ++c) {
                group.eigenvectors[j][c] = solver.eigenvectors()(c, src);
            }
        }
    }
    return model;
}

std::array<SaliencyMap, 4> distance_maps(const BackgroundModel& model,
                                         const OpponentPlanes& opp,
                                         const LabPlanes& lab, int patch_size,
                                         bool whitened) {
    if (patch_size < 1) {
        throw ParamError("distance_maps: patch_size must be >= 1");
    }
    if (opp.width() != lab.width() || opp.height() != lab.height()) {
        throw ParamError("distance_maps: feature plane dimensions differ");
    }
    const int w = opp.width();
    const int h = opp.height();
    const FeatureGrid grid = grid_features(opp, lab, patch_size);

    std::array<SaliencyMap, 4> out{SaliencyMap{Plane(w, h), false},
                                   SaliencyMap{Plane(w, h), false},
                                   SaliencyMap{Plane(w, h), false},
                                   SaliencyMap{Plane(w, h), false}};
    constexpr double kWhitenFloor = 1e-6;
    for (int p = 0; p < 4; ++p) {
        const BackgroundGroup& group = model.groups[p];
        // Score each grid cell once, then broadcast to its pixels.
        std::vector<double> cell_score(grid.cells.size());
        for (size_t ci = 0; ci < grid.cells.size(); ++ci) {
            const PatchFeature& f = grid.cells[ci];
            if (whitened) {
                double acc = 0.0;
                for (int j = 0; j < 6; ++j) {
                    double proj = 0.0;
                    for (int c = 0; c < 6; ++c) {
                        proj += group.eigenvectors[j][c] * (f[c] - group.centroid[c]);
                    }
                    acc += proj * proj / (group.eigenvalues[j] + kWhitenFloor);
                }
                cell_score[ci] = std::sqrt(acc);
            } else {
                cell_score[ci] = std::sqrt(squared_distance(f, group.centroid));
            }
        }
        Plane raw(w, h);
        for (int y = 0; y < h; ++y) {
            const int gy = y / patch_size;
            for (int x = 0; x < w; ++x) {
                const int gx = x / patch_size;
                raw.at(x, y) = cell_score[static_cast<size_t>(gy) * grid.cols + gx];
            }
        }
        out[p] = minmax_normalize(raw);
    }
    return out;
}

SaliencyMap coarse_map(const std::array<SaliencyMap, 4>& maps,
                       const std::array<double, 4>& weights) {
    double total = 0.0;
    for (const double wgt : weights) {
        if (wgt < 0.0) {
            throw ParamError("coarse_map: weights must be non-negative");
        }
        total += wgt;
    }
    if (total <= 0.0) {
        throw ParamError("coarse_map: at least one weight must be positive");
    }
    const int w = maps[0].values.width();
    const int h = maps[0].values.height();
    for (const SaliencyMap& m : maps) {
        if (!m.values.same_size(maps[0].values)) {
            throw ParamError("coarse_map: maps have different dimensions");
        }
    }
    Plane acc(w, h, 0.0);
    for (int p = 0; p < 4; ++p) {
        const double wp = weights[p] / total;
        if (wp == 0.0) {
            continue;
        }
        for (size_t i = 0; i < acc.values().size(); ++i) {
            acc[i] += wp * maps[p].values[i];
        }
    }
    return minmax_normalize(acc);
}

}  // namespace lesionseg
