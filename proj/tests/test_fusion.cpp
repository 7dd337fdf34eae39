#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "lesionseg/errors.hpp"
#include "lesionseg/fusion.hpp"
#include "lesionseg/plane_ops.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace lesionseg;
using testutil::make_map;

namespace {

// 16x16 map whose 256 pixels spread evenly over `levels` distinct values
// k/levels, k = 0..levels-1: its 256-bin histogram entropy is exactly
// log2(levels).
SaliencyMap even_level_map(int levels) {
    std::vector<double> values(256);
    for (int i = 0; i < 256; ++i) {
        values[i] = static_cast<double>(i % levels) / levels;
    }
    SaliencyMap m = make_map(16, 16, values);
    m.normalized = true;
    return m;
}

BinaryMask disk_mask(int size, int cx, int cy, int radius) {
    BinaryMask m(size, size);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const int dx = x - cx;
            const int dy = y - cy;
            m.set(x, y, dx * dx + dy * dy <= radius * radius);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("histogram entropy") {
    SUBCASE("constant map carries zero bits") {
        CHECK(entropy(make_map(8, 8, std::vector<double>(64, 0.77))) == 0.0);
    }

    SUBCASE("a half-and-half binary map carries one bit") {
        std::vector<double> values(64, 0.0);
        for (int i = 0; i < 32; ++i) {
            values[i] = 1.0;
        }
        CHECK(entropy(make_map(8, 8, values)) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("uniform occupancy of all 256 bins carries eight bits") {
        CHECK(entropy(even_level_map(256)) == doctest::Approx(8.0).epsilon(1e-12));
    }

    SUBCASE("entropy is bounded by log2 of the bin count") {
        std::mt19937_64 rng(79);
        for (int trial = 0; trial < 10; ++trial) {
            const SaliencyMap m = minmax_normalize(testutil::random_plane(16, 16, rng));
            const double h = entropy(m);
            CHECK(h >= 0.0);
            CHECK(h <= 8.0);
        }
    }
}

TEST_CASE("initial map fusion") {
    SUBCASE("identical two-value inputs pass through in both modes") {
        std::vector<double> values(64, 0.0);
        for (int i = 0; i < 32; ++i) {
            values[i] = 1.0;
        }
        const SaliencyMap m = make_map(8, 8, values, true);
        const SaliencyMap sum = initial_map(m, m, false);
        const SaliencyMap prod = initial_map(m, m, true);
        CHECK(testutil::max_abs_diff(sum.values, m.values) < 1e-12);
        CHECK(testutil::max_abs_diff(prod.values, m.values) < 1e-12);
        CHECK(sum.normalized);
    }

    SUBCASE("reciprocal-entropy weights scale each input") {
        // Exactly 4 and 16 occupied bins: entropies 2 and 4 bits, so the
        // combination is 0.5*col + 0.25*feq before normalization.
        const SaliencyMap col = even_level_map(4);
        const SaliencyMap feq = even_level_map(16);
        const SaliencyMap out = initial_map(col, feq, false);
        Plane expect(16, 16);
        for (std::size_t i = 0; i < expect.values().size(); ++i) {
            expect[i] = 0.5 * col.values[i] + 0.25 * feq.values[i];
        }
        const SaliencyMap norm = minmax_normalize(expect);
        CHECK(testutil::max_abs_diff(out.values, norm.values) < 1e-12);
    }

    SUBCASE("chart mode annihilates against an all-zero input") {
        std::mt19937_64 rng(83);
        const SaliencyMap col = minmax_normalize(testutil::random_plane(8, 8, rng));
        const SaliencyMap zero = make_map(8, 8, std::vector<double>(64, 0.0), true);
        const SaliencyMap out = initial_map(col, zero, true);
        CHECK(plane_max(out.values) == 0.0);
    }

    SUBCASE("sum mode keeps a raised pixel's rank") {
        // Two maps differing only in one pixel of col (0 -> 1), with anchors
        // pinning the pre-normalization extremes so the rescaling matches.
        std::vector<double> col_a(64, 0.0), feq(64, 0.0);
        col_a[0] = 1.0;
        feq[0] = 1.0;          // anchor at both-high
        col_a[10] = 1.0;       // probe pixel high in A...
        std::vector<double> col_b = col_a;
        col_b[10] = 0.0;       // ...and low in B
        col_b[20] = 1.0;       // swap keeps the histogram (and entropy) equal
        const SaliencyMap out_a = initial_map(make_map(8, 8, col_a, true),
                                              make_map(8, 8, feq, true), false);
        const SaliencyMap out_b = initial_map(make_map(8, 8, col_b, true),
                                              make_map(8, 8, feq, true), false);
        CHECK(out_a.values[10] > out_b.values[10]);
    }

    SUBCASE("dimension mismatch is rejected") {
        const SaliencyMap a = make_map(8, 8, std::vector<double>(64, 0.5));
        const SaliencyMap b = make_map(8, 4, std::vector<double>(32, 0.5));
        CHECK_THROWS_AS(initial_map(a, b, false), ParamError);
    }
}

TEST_CASE("final map fusion") {
    SUBCASE("an all-one coarse map passes the initial map through") {
        std::mt19937_64 rng(89);
        const SaliencyMap m = minmax_normalize(testutil::random_plane(12, 12, rng));
        const SaliencyMap ones = make_map(12, 12, std::vector<double>(144, 1.0), true);
        const SaliencyMap out = final_map(m, ones);
        CHECK(testutil::max_abs_diff(out.values, m.values) < 1e-12);
    }

    SUBCASE("an all-zero input annihilates the output") {
        std::mt19937_64 rng(97);
        const SaliencyMap m = minmax_normalize(testutil::random_plane(12, 12, rng));
        const SaliencyMap zeros = make_map(12, 12, std::vector<double>(144, 0.0), true);
        CHECK(plane_max(final_map(m, zeros).values) == 0.0);
        CHECK(plane_max(final_map(zeros, m).values) == 0.0);
    }

    SUBCASE("equal ramps square pointwise") {
        std::vector<double> ramp(256);
        for (int i = 0; i < 256; ++i) {
            ramp[i] = i / 255.0;
        }
        const SaliencyMap r = make_map(16, 16, ramp, true);
        const SaliencyMap out = final_map(r, r);
        for (int i = 0; i < 256; ++i) {
            CHECK(out.values[i] == doctest::Approx(ramp[i] * ramp[i]).epsilon(1e-9));
        }
    }

    SUBCASE("argmax is invariant to positive input rescaling") {
        std::mt19937_64 rng(101);
        const Plane a = testutil::random_plane(10, 10, rng);
        const Plane b = testutil::random_plane(10, 10, rng);
        Plane a_scaled = a;
        for (auto& v : a_scaled.values()) {
            v *= 3.7;
        }
        const SaliencyMap out1 = final_map(make_map(10, 10, a.values()),
                                           make_map(10, 10, b.values()));
        const SaliencyMap out2 = final_map(make_map(10, 10, a_scaled.values()),
                                           make_map(10, 10, b.values()));
        const auto argmax = [](const SaliencyMap& m) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < m.values.values().size(); ++i) {
                if (m.values[i] > m.values[best]) {
                    best = i;
                }
            }
            return best;
        };
        CHECK(argmax(out1) == argmax(out2));
    }
}

TEST_CASE("otsu thresholding") {
    SUBCASE("bimodal 0.2/0.8 map splits at the lowest tied cut") {
        std::vector<double> values(64, 0.2);
        for (int i = 0; i < 32; ++i) {
            values[i] = 0.8;
        }
        const SaliencyMap m = make_map(8, 8, values, true);
        const double t = otsu_threshold(m);
        CHECK(t > 0.2);
        CHECK(t < 0.8);
        // Values land in bins 51 and 204; every cut between ties, and the
        // tie breaks low: 52/256.
        CHECK(t == 52.0 / 256.0);
        const BinaryMask mask = binarize(m, t);
        for (int i = 0; i < 64; ++i) {
            CHECK(mask.mask[i] == (values[i] > 0.5 ? 1 : 0));
        }
    }

    SUBCASE("binary map thresholds strictly inside (0,1)") {
        std::vector<double> values(64, 0.0);
        for (int i = 0; i < 20; ++i) {
            values[i] = 1.0;
        }
        const double t = otsu_threshold(make_map(8, 8, values, true));
        CHECK(t > 0.0);
        CHECK(t < 1.0);
    }

    SUBCASE("constant map is degenerate") {
        CHECK_THROWS_AS(otsu_threshold(make_map(8, 8, std::vector<double>(64, 0.5), true)),
                        DegenerateError);
    }

    SUBCASE("agrees with the exhaustive oracle on random histograms") {
        std::mt19937_64 rng(1234);
        std::uniform_int_distribution<int> count(0, 50);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> hist(256);
            for (auto& h : hist) {
                h = count(rng);
            }
            double expect;
            try {
                expect = oracles::exhaustive_otsu(hist);
            } catch (const std::runtime_error&) {
                CHECK_THROWS_AS(otsu_from_histogram(hist), DegenerateError);
                continue;
            }
            CAPTURE(trial);
            CHECK(otsu_from_histogram(hist) == expect);
        }
    }

    SUBCASE("invalid histograms are rejected") {
        CHECK_THROWS_AS(otsu_from_histogram({1.0}), ParamError);
        CHECK_THROWS_AS(otsu_from_histogram({1.0, -2.0, 3.0}), ParamError);
        CHECK_THROWS_AS(otsu_from_histogram(std::vector<double>(256, 0.0)),
                        DegenerateError);
    }
}

TEST_CASE("mask post-processing") {
    SUBCASE("a solid disk is stable") {
        const BinaryMask disk = disk_mask(80, 40, 40, 30);
        const BinaryMask out = postprocess_mask(disk, 5, true);
        CHECK(out.mask == disk.mask);
    }

    SUBCASE("an interior hole is filled") {
        BinaryMask disk = disk_mask(80, 40, 40, 30);
        for (int y = 39; y <= 41; ++y) {
            for (int x = 39; x <= 41; ++x) {
                disk.set(x, y, false);
            }
        }
        const BinaryMask out = postprocess_mask(disk, 5, true);
        for (int y = 39; y <= 41; ++y) {
            for (int x = 39; x <= 41; ++x) {
                CHECK(out.at(x, y));
            }
        }
        CHECK(out.mask == disk_mask(80, 40, 40, 30).mask);
    }

    SUBCASE("keep_largest drops secondary blobs") {
        BinaryMask two = disk_mask(100, 35, 35, 20);
        const BinaryMask small = disk_mask(100, 80, 80, 8);
        for (std::size_t i = 0; i < two.mask.size(); ++i) {
            if (small.mask[i]) {
                two.mask[i] = 1;
            }
        }
        const BinaryMask kept = postprocess_mask(two, 3, true);
        CHECK_FALSE(kept.at(80, 80));
        CHECK(kept.at(35, 35));
        const BinaryMask both = postprocess_mask(two, 3, false);
        CHECK(both.at(80, 80));
        CHECK(both.at(35, 35));
    }

    SUBCASE("a lone speck vanishes even without component selection") {
        BinaryMask disk = disk_mask(100, 40, 40, 25);
        disk.set(90, 90, true);
        const BinaryMask out = postprocess_mask(disk, 3, true);
        CHECK_FALSE(out.at(90, 90));
    }

    SUBCASE("idempotent on blobby masks") {
        std::mt19937_64 rng(107);
        for (int trial = 0; trial < 5; ++trial) {
            const Plane noise = gaussian_blur(testutil::random_plane(64, 64, rng), 3.0);
            const SaliencyMap m = minmax_normalize(noise);
            const BinaryMask mask = binarize(m, 0.5);
            const BinaryMask once = postprocess_mask(mask, 3, true);
            const BinaryMask twice = postprocess_mask(once, 3, true);
            CAPTURE(trial);
            CHECK(once.mask == twice.mask);
        }
    }
}
