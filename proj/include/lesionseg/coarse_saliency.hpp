#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lesionseg/color.hpp"
#include "lesionseg/raster.hpp"

namespace lesionseg {

/// Six-dimensional patch feature: mean RG, BY, I, L, a, b within the patch.
using PatchFeature = std::array<double, 6>;

struct BorderPatch {
    int gx = 0;  // patch-grid column
    int gy = 0;  // patch-grid row
    PatchFeature feature{};
};

struct PatchSet {
    std::vector<BorderPatch> patches;
    int patch_size = 8;
};

/// One clustered background group. Eigenvalues are sorted descending and
/// eigenvectors[j] corresponds to eigenvalues[j]; empty and singleton groups
/// carry the identity basis with zero eigenvalues.
struct BackgroundGroup {
    PatchFeature centroid{};
    std::array<PatchFeature, 6> eigenvectors{};
    std::array<double, 6> eigenvalues{};
    int member_count = 0;
};

struct BackgroundModel {
    std::array<BackgroundGroup, 4> groups;
};

/// Collect the one-patch-wide band of grid cells along all four borders.
/// The grid is ceil(W/patch_size) x ceil(H/patch_size); edge cells may be
/// partial. Throws ParamError when patch_size < 4 or the grid would be
/// smaller than 2x2 cells.
PatchSet extract_border_patches(const OpponentPlanes& opp, const LabPlanes& lab,
                                int patch_size);

/// k-means (k = 4, k-means++ seeding, deterministic for a given seed) over the
/// patch features, followed by a per-group covariance eigendecomposition.
/// Throws ModelError with fewer than four patches.
BackgroundModel cluster_background(const PatchSet& patches, uint64_t seed);

/// For each group, score every pixel by the Euclidean distance between the
/// feature of its containing grid patch and the group centroid, then min-max
/// normalize. `whitened` instead scales each eigen-direction by its
/// eigenvalue (a Mahalanobis-style distance using the stored decomposition).
std::array<SaliencyMap, 4> distance_maps(const BackgroundModel& model,
                                         const OpponentPlanes& opp,
                                         const LabPlanes& lab, int patch_size,
                                         bool whitened = false);

/// Weighted average of the four distance maps, min-max normalized.
/// Throws ParamError when a weight is negative or all weights are zero.
SaliencyMap coarse_map(const std::array<SaliencyMap, 4>& maps,
                       const std::array<double, 4>& weights);

}  // namespace lesionseg
