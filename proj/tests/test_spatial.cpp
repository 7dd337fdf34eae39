#include "doctest.h"

#include <cmath>
#include <random>

#include "lesionseg/errors.hpp"
#include "lesionseg/plane_ops.hpp"
#include "lesionseg/spatial_saliency.hpp"
#include "test_util.hpp"

using namespace lesionseg;
using testutil::make_map;
using testutil::make_plane;
using testutil::make_rgb;

namespace {

OpponentPlanes constant_opp(int w, int h, double rg, double by, double i) {
    OpponentPlanes p;
    p.rg = Plane(w, h, rg);
    p.by = Plane(w, h, by);
    p.i = Plane(w, h, i);
    return p;
}

LabPlanes constant_lab(int w, int h, double l, double a, double b) {
    LabPlanes p;
    p.l = Plane(w, h, l);
    p.a = Plane(w, h, a);
    p.b = Plane(w, h, b);
    return p;
}

}  // namespace

TEST_CASE("opponent contrast map") {
    SUBCASE("constant planes give a zero map") {
        // Dyadic constants keep the plane means exact, so the distances to the
        // means are exactly zero.
        const SaliencyMap m = coc_contrast_map(constant_opp(6, 6, 0.5, -0.25, 0.375));
        CHECK(plane_max(m.values) == 0.0);
    }

    SUBCASE("one-hot RG plane on a 10x10 grid") {
        OpponentPlanes p = constant_opp(10, 10, 0.0, 0.0, 0.0);
        p.rg.at(3, 7) = 1.0;
        const SaliencyMap m = coc_contrast_map(p);
        // mean of RG is 0.01: hot pixel sqrt(0.99), everyone else sqrt(0.01).
        CHECK(m.values.at(3, 7) == doctest::Approx(std::sqrt(0.99)).epsilon(1e-12));
        CHECK(m.values.at(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(m.values.at(9, 9) == doctest::Approx(0.1).epsilon(1e-12));
    }

    SUBCASE("negating every plane leaves the map unchanged") {
        std::mt19937_64 rng(31);
        OpponentPlanes p;
        p.rg = testutil::random_plane(8, 8, rng);
        p.by = testutil::random_plane(8, 8, rng);
        p.i = testutil::random_plane(8, 8, rng);
        OpponentPlanes neg = p;
        for (auto* plane : {&neg.rg, &neg.by, &neg.i}) {
            for (auto& v : plane->values()) {
                v = -v;
            }
        }
        const SaliencyMap a = coc_contrast_map(p);
        const SaliencyMap b = coc_contrast_map(neg);
        CHECK(testutil::max_abs_diff(a.values, b.values) < 1e-12);
    }
}

TEST_CASE("lab contrast map") {
    SUBCASE("constant planes give a zero map") {
        const SaliencyMap m = lab_contrast_map(constant_lab(5, 5, 50.0, 10.0, -4.0));
        CHECK(plane_max(m.values) == 0.0);
    }

    SUBCASE("a pixel one sigma above the L mean scores sqrt(sigma)") {
        // L values {0,...,0,2,2,...}: construct mean 1, sigma 1 with {0,2}.
        LabPlanes p = constant_lab(2, 1, 0.0, 3.0, -1.0);
        p.l.at(0, 0) = 0.0;
        p.l.at(1, 0) = 2.0;
        // mu_L = 1, sigma_L = 1: each pixel deviates exactly sigma_L.
        const SaliencyMap m = lab_contrast_map(p);
        CHECK(m.values.at(0, 0) == doctest::Approx(std::sqrt(1.0)).epsilon(1e-9));
        CHECK(m.values.at(1, 0) == doctest::Approx(std::sqrt(1.0)).epsilon(1e-9));
    }

    SUBCASE("sigma versus variance denominators differ as designed") {
        // L values {0,4}: mu 2, sigma 2. Deviation^2 = 4.
        LabPlanes p = constant_lab(2, 1, 0.0, 0.0, 0.0);
        p.l.at(0, 0) = 0.0;
        p.l.at(1, 0) = 4.0;
        const SaliencyMap first_power = lab_contrast_map(p, false);
        const SaliencyMap squared = lab_contrast_map(p, true);
        CHECK(first_power.values.at(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(squared.values.at(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("per-plane constant shifts do not change the map") {
        std::mt19937_64 rng(37);
        LabPlanes p;
        p.l = testutil::random_plane(7, 9, rng);
        p.a = testutil::random_plane(7, 9, rng);
        p.b = testutil::random_plane(7, 9, rng);
        LabPlanes shifted = p;
        for (auto& v : shifted.l.values()) v += 17.0;
        for (auto& v : shifted.a.values()) v -= 4.5;
        for (auto& v : shifted.b.values()) v += 0.25;
        const SaliencyMap a = lab_contrast_map(p);
        const SaliencyMap b = lab_contrast_map(shifted);
        CHECK(testutil::max_abs_diff(a.values, b.values) < 1e-6);
    }
}

TEST_CASE("spatial map fusion") {
    const Raster guide = make_rgb(8, 8, 0.5, 0.5, 0.5);
    SpatialParams params;
    params.smoothing.radius = 2;
    params.smoothing.epsilon = 1e-3;
    params.smoothing.subsample = 1;

    SUBCASE("45 degrees multiplies the two maps before filtering") {
        std::mt19937_64 rng(41);
        const SaliencyMap coc = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        const SaliencyMap lab = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        params.theta_degrees = 45.0;
        const SaliencyMap out = spatial_map(coc, lab, params, guide);

        Plane product(8, 8);
        for (std::size_t i = 0; i < product.values().size(); ++i) {
            product[i] = coc.values[i] * lab.values[i];
        }
        Raster wrapped;
        wrapped.tag = PlaneTag::Map;
        wrapped.planes = {product};
        const Raster filtered = fast_guided_filter(guide, wrapped, params.smoothing);
        const SaliencyMap expected = minmax_normalize(filtered.planes[0]);
        CHECK(testutil::max_abs_diff(out.values, expected.values) < 1e-12);
        CHECK(out.normalized);
        CHECK(plane_min(out.values) >= 0.0);
        CHECK(plane_max(out.values) <= 1.0);
    }

    SUBCASE("0 degrees reduces to the filtered opponent contrast") {
        std::mt19937_64 rng(43);
        const SaliencyMap coc = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        SaliencyMap lab = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        lab.values.at(2, 2) = 0.0;  // exercises 0^0 == 1
        params.theta_degrees = 0.0;
        const SaliencyMap out = spatial_map(coc, lab, params, guide);

        Raster wrapped;
        wrapped.tag = PlaneTag::Map;
        wrapped.planes = {coc.values};
        const Raster filtered = fast_guided_filter(guide, wrapped, params.smoothing);
        const SaliencyMap expected = minmax_normalize(filtered.planes[0]);
        CHECK(testutil::max_abs_diff(out.values, expected.values) < 1e-12);
    }

    SUBCASE("tan of 63.435 degrees squares the lab map") {
        // theta = atan(2) in degrees, so each lab value is raised to the
        // power 2: a pixel at 0.25 contributes 0.0625 to the pre-filter
        // product. Squares of dyadic values are exact, so the whole
        // composition can be recomputed in the test.
        const SaliencyMap coc = make_map(8, 8, std::vector<double>(64, 1.0), true);
        std::vector<double> lab_values(64);
        const double levels[4] = {0.25, 0.5, 0.75, 1.0};
        for (std::size_t i = 0; i < lab_values.size(); ++i) {
            lab_values[i] = levels[i % 4];
        }
        const SaliencyMap lab = make_map(8, 8, lab_values, true);
        params.theta_degrees = 63.43494882292201;
        const SaliencyMap out = spatial_map(coc, lab, params, guide);

        Plane squared(8, 8);
        for (std::size_t i = 0; i < lab_values.size(); ++i) {
            squared[i] = lab_values[i] * lab_values[i];
        }
        Raster wrapped;
        wrapped.tag = PlaneTag::Map;
        wrapped.planes = {squared};
        const Raster filtered = fast_guided_filter(guide, wrapped, params.smoothing);
        const SaliencyMap expected = minmax_normalize(filtered.planes[0]);
        CHECK(testutil::max_abs_diff(out.values, expected.values) < 1e-12);
    }

    SUBCASE("theta above 90 produces finite output") {
        std::mt19937_64 rng(47);
        const SaliencyMap coc = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        const SaliencyMap lab = make_map(8, 8, testutil::random_plane(8, 8, rng).values(), true);
        params.theta_degrees = 120.0;
        const SaliencyMap out = spatial_map(coc, lab, params, guide);
        CHECK(plane_finite(out.values));
        CHECK(plane_min(out.values) >= 0.0);
        CHECK(plane_max(out.values) <= 1.0);
    }

    SUBCASE("90 degrees is rejected") {
        const SaliencyMap coc = make_map(8, 8, std::vector<double>(64, 0.5));
        const SaliencyMap lab = make_map(8, 8, std::vector<double>(64, 0.5));
        params.theta_degrees = 90.0;
        CHECK_THROWS_AS(spatial_map(coc, lab, params, guide), ParamError);
    }

    SUBCASE("mismatched dimensions are rejected") {
        const SaliencyMap coc = make_map(8, 8, std::vector<double>(64, 0.5));
        const SaliencyMap lab = make_map(7, 8, std::vector<double>(56, 0.5));
        params.theta_degrees = 45.0;
        CHECK_THROWS_AS(spatial_map(coc, lab, params, guide), ParamError);
    }
}
