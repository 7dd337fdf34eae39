#include "doctest.h"

#include <cmath>
#include <random>

#include "lesionseg/errors.hpp"
#include "lesionseg/fft.hpp"
#include "lesionseg/frequency_saliency.hpp"
#include "lesionseg/plane_ops.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace lesionseg;
using testutil::make_map;

namespace {

OpponentPlanes constant_opp(int w, int h, double rg, double by, double i) {
    OpponentPlanes p;
    p.rg = Plane(w, h, rg);
    p.by = Plane(w, h, by);
    p.i = Plane(w, h, i);
    return p;
}

Raster wrap_gray(const Plane& p) {
    Raster r;
    r.tag = PlaneTag::Gray;
    r.planes = {p};
    return r;
}

Plane delta_kernel(int size) {
    Plane k(size, size, 0.0);
    k.at(size / 2, size / 2) = 1.0;
    return k;
}

}  // namespace

TEST_CASE("channel aggregation") {
    SUBCASE("opponent weighted sum") {
        const OpponentPlanes p = constant_opp(5, 4, 0.2, 0.4, 0.6);
        const Raster zero = aggregate_opp(p, {0.0, 0.0, 0.0});
        CHECK(plane_max(zero.planes[0]) == 0.0);
        const Raster rg_only = aggregate_opp(p, {1.0, 0.0, 0.0});
        CHECK(rg_only.planes[0].at(2, 2) == doctest::Approx(0.2).epsilon(1e-12));
        const Raster thirds = aggregate_opp(p, {1.0 / 3, 1.0 / 3, 1.0 / 3});
        CHECK(thirds.planes[0].at(0, 0) == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(thirds.planes.size() == 1);
    }

    SUBCASE("lab weighted sum skips lightness") {
        LabPlanes p;
        p.l = Plane(3, 3, 77.0);
        p.a = Plane(3, 3, 10.0);
        p.b = Plane(3, 3, -4.0);
        const Raster a_only = aggregate_lab(p, {1.0, 0.0});
        CHECK(a_only.planes[0].at(1, 1) == doctest::Approx(10.0).epsilon(1e-12));
        const Raster halves = aggregate_lab(p, {0.5, 0.5});
        CHECK(halves.planes[0].at(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
        const Raster zero = aggregate_lab(p, {0.0, 0.0});
        CHECK(plane_max(zero.planes[0]) == 0.0);
    }

    SUBCASE("weights outside [0,1] are rejected") {
        const OpponentPlanes p = constant_opp(4, 4, 0.1, 0.1, 0.1);
        CHECK_THROWS_AS(aggregate_opp(p, {1.2, 0.0, 0.0}), ParamError);
        CHECK_THROWS_AS(aggregate_opp(p, {-0.1, 0.5, 0.5}), ParamError);
        LabPlanes lp;
        lp.l = Plane(4, 4, 0.0);
        lp.a = Plane(4, 4, 0.0);
        lp.b = Plane(4, 4, 0.0);
        CHECK_THROWS_AS(aggregate_lab(lp, {0.5, 1.5}), ParamError);
    }
}

TEST_CASE("log-Gabor kernel construction") {
    SUBCASE("default kernel is zero-centered and sums to one") {
        const Plane k = log_gabor_kernel(9, 2.0, 0.55);
        CHECK(k.width() == 9);
        CHECK(k.height() == 9);
        CHECK(k.at(4, 4) == 0.0);
        double sum = 0.0;
        for (const double v : k.values()) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("kernel is radially symmetric") {
        const Plane k = log_gabor_kernel(9, 2.0, 0.55);
        for (int y = 0; y < 9; ++y) {
            for (int x = 0; x < 9; ++x) {
                CHECK(k.at(x, y) == doctest::Approx(k.at(8 - x, y)).epsilon(1e-12));
                CHECK(k.at(x, y) == doctest::Approx(k.at(x, 8 - y)).epsilon(1e-12));
                CHECK(k.at(x, y) == doctest::Approx(k.at(y, x)).epsilon(1e-12));
            }
        }
    }

    SUBCASE("invalid parameters are rejected") {
        CHECK_THROWS_AS(log_gabor_kernel(8, 2.0, 0.55), ParamError);
        CHECK_THROWS_AS(log_gabor_kernel(1, 2.0, 0.55), ParamError);
        CHECK_THROWS_AS(log_gabor_kernel(9, 0.0, 0.55), ParamError);
        CHECK_THROWS_AS(log_gabor_kernel(9, 2.0, 1.0), ParamError);
        CHECK_THROWS_AS(log_gabor_kernel(9, 2.0, 0.0), ParamError);
    }
}

TEST_CASE("spectrum analysis") {
    SUBCASE("constant image concentrates amplitude at DC") {
        const Spectrum spec = analyze_spectrum(Plane(16, 16, 0.5));
        CHECK(spec.amplitude_log.at(0, 0) ==
              doctest::Approx(std::log(0.5 * 16 * 16)).epsilon(1e-9));
        // Away from DC the amplitude hits the floor.
        CHECK(spec.amplitude_log.at(5, 7) ==
              doctest::Approx(std::log(1e-12)).epsilon(1e-6));
        CHECK(plane_finite(spec.amplitude_log));
        CHECK(plane_finite(spec.phase));
    }

    SUBCASE("phase stays within (-pi, pi]") {
        std::mt19937_64 rng(61);
        const Spectrum spec = analyze_spectrum(testutil::random_plane(12, 10, rng));
        for (const double v : spec.phase.values()) {
            CHECK(v > -M_PI - 1e-12);
            CHECK(v <= M_PI + 1e-12);
        }
    }

    SUBCASE("fft round-trips through its inverse") {
        std::mt19937_64 rng(67);
        const Plane re = testutil::random_plane(16, 12, rng);
        const Plane im = testutil::random_plane(16, 12, rng);
        const ComplexPlanes fwd = fft2d(re, im, false);
        const ComplexPlanes back = fft2d(fwd.re, fwd.im, true);
        CHECK(testutil::max_abs_diff(back.re, re) < 1e-10);
        CHECK(testutil::max_abs_diff(back.im, im) < 1e-10);
    }
}

TEST_CASE("spectral saliency map") {
    SUBCASE("identity kernel reduces to the square-rooted image") {
        std::mt19937_64 rng(71);
        Plane gray = testutil::random_plane(16, 16, rng);
        for (auto& v : gray.values()) {
            v += 0.1;  // keep amplitudes clear of the floor
        }
        const SaliencyMap out = spectral_map_with_kernel(wrap_gray(gray), delta_kernel(9));
        Plane expect(16, 16);
        for (std::size_t i = 0; i < expect.values().size(); ++i) {
            expect[i] = std::sqrt(std::abs(gray[i]));
        }
        const SaliencyMap norm = minmax_normalize(expect);
        CHECK(testutil::max_abs_diff(out.values, norm.values) < 1e-4);
    }

    SUBCASE("constant input yields an all-zero map") {
        const SaliencyMap out =
            spectral_map(wrap_gray(Plane(16, 16, 0.7)), SpectralParams{});
        CHECK(plane_max(out.values) == 0.0);
    }

    SUBCASE("matches the naive DFT oracle on 16x16 inputs") {
        const Plane kernel = log_gabor_kernel(9, 2.0, 0.55);
        for (const uint64_t seed : {101ull, 202ull, 303ull}) {
            std::mt19937_64 rng(seed);
            const Plane gray = testutil::random_plane(16, 16, rng);
            const SaliencyMap fast = spectral_map_with_kernel(wrap_gray(gray), kernel);
            const Plane slow = oracles::naive_spectral_map(gray, kernel);
            CAPTURE(seed);
            CHECK(testutil::max_abs_diff(fast.values, slow) < 1e-4);
        }
    }

    SUBCASE("tiny images are rejected") {
        CHECK_THROWS_AS(spectral_map(wrap_gray(Plane(7, 16, 0.5)), SpectralParams{}),
                        ParamError);
        CHECK_THROWS_AS(spectral_map(wrap_gray(Plane(16, 7, 0.5)), SpectralParams{}),
                        ParamError);
    }
}

TEST_CASE("frequency map fusion") {
    std::mt19937_64 rng(73);
    const SaliencyMap m = minmax_normalize(testutil::random_plane(16, 16, rng));

    SUBCASE("identical inputs blur and renormalize") {
        const SaliencyMap out = frequency_map(m, m, 1.5);
        const SaliencyMap expect = minmax_normalize(gaussian_blur(m.values, 1.5));
        CHECK(testutil::max_abs_diff(out.values, expect.values) < 1e-12);
    }

    SUBCASE("complementary constants cancel to zero") {
        const SaliencyMap ones = make_map(8, 8, std::vector<double>(64, 1.0), true);
        const SaliencyMap zeros = make_map(8, 8, std::vector<double>(64, 0.0), true);
        const SaliencyMap out = frequency_map(ones, zeros, 1.0);
        CHECK(plane_max(out.values) == 0.0);
    }

    SUBCASE("near-zero sigma leaves the average unblurred") {
        const SaliencyMap other = minmax_normalize(testutil::random_plane(16, 16, rng));
        const SaliencyMap out = frequency_map(m, other, 1e-6);
        Plane avg(16, 16);
        for (std::size_t i = 0; i < avg.values().size(); ++i) {
            avg[i] = 0.5 * (m.values[i] + other.values[i]);
        }
        const SaliencyMap expect = minmax_normalize(avg);
        CHECK(testutil::max_abs_diff(out.values, expect.values) < 1e-4);
    }

    SUBCASE("symmetric in its inputs") {
        const SaliencyMap other = minmax_normalize(testutil::random_plane(16, 16, rng));
        const SaliencyMap ab = frequency_map(m, other, 2.0);
        const SaliencyMap ba = frequency_map(other, m, 2.0);
        CHECK(testutil::max_abs_diff(ab.values, ba.values) < 1e-12);
    }
}

TEST_CASE("a chroma-only blob survives into the fused frequency map") {
    // The opponent aggregate is flat; only the lab aggregate sees the blob.
    const int n = 32;
    const Plane flat(n, n, 0.5);
    Plane chroma(n, n, 0.2);
    for (int y = 12; y < 20; ++y) {
        for (int x = 12; x < 20; ++x) {
            chroma.at(x, y) = 0.9;
        }
    }
    SpectralParams params;
    const SaliencyMap spec_opp = spectral_map(wrap_gray(flat), params);
    const SaliencyMap spec_lab = spectral_map(wrap_gray(chroma), params);
    const SaliencyMap fused = frequency_map(spec_opp, spec_lab, 1.0);

    double blob = 0.0;
    double rest = 0.0;
    int blob_n = 0;
    int rest_n = 0;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (x >= 12 && x < 20 && y >= 12 && y < 20) {
                blob += fused.values.at(x, y);
                ++blob_n;
            } else {
                rest += fused.values.at(x, y);
                ++rest_n;
            }
        }
    }
    CHECK(blob / blob_n > rest / rest_n);
}
