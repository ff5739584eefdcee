#include <cmath>
#include <complex>

#include "doctest.h"
#include "tperc/cft.hpp"
#include "tperc/errors.hpp"

using namespace tperc;
using namespace tperc::cft;
using cd = std::complex<double>;

TEST_CASE("gamma reflection at one third") {
    const double lhs = gamma_fn(1.0 / 3.0) * gamma_fn(2.0 / 3.0);
    CHECK(std::abs(lhs / (2.0 * kPi / kSqrt3) - 1.0) < 1e-12);
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("hypergeometric series") {
    CHECK(hyp2f1(0.3, 0.7, 1.1, 0.0).value == 1.0);
    CHECK(std::abs(hyp2f1(1, 1, 2, 0.5).value - 1.3862943611198906) < 1e-13);
    // 40-digit references computed offline.
    CHECK(std::abs(hyp2f1(1.0 / 3, 2.0 / 3, 4.0 / 3, 0.3).value - 1.058842786452882640) < 1e-14);
    CHECK(std::abs(hyp3f2_special(0.1).value - 1.042505251726442822) < 1e-14);
    CHECK(std::abs(hyp3f2_special(0.5).value - 1.290551220469670014) < 1e-14);
    CHECK(std::abs(hyp3f2_special(0.9).value - 1.991407201550070376) < 1e-13);
    CHECK(hyp3f2_special(0.0).value == 1.0);
    // c1 = 2/5, c2 = c1 * (2 * 7/3) / ((8/3) * 3) = 7/30.
    CHECK(std::abs(hyp3f2_special(1e-6).value - (1.0 + 0.4e-6 + 7.0 / 30 * 1e-12)) < 1e-15);
    CHECK_THROWS_AS((void)hyp2f1(1, 1, -2, 0.5), ArgumentError);
    CHECK_THROWS_AS((void)hyp2f1(1, 1, 2, 0.97), RangeError);
    CHECK_THROWS_AS((void)hyp3f2_special(-0.1), RangeError);
}

TEST_CASE("series bounds are honest") {
    for (const double x : {0.1, 0.5, 0.9, 0.95}) {
        const auto coarse = hyp3f2_special(x, {.tolerance = 1e-10});
        const auto fine = hyp3f2_special(x, {.tolerance = 1e-17});
        CHECK(std::abs(coarse.value - fine.value) <= coarse.abs_error_bound + fine.abs_error_bound);
        CHECK(fine.abs_error_bound < 1e-12);
        const auto g = hyp2f1(1.0 / 3, 2.0 / 3, 4.0 / 3, x, {.tolerance = 1e-10});
        const auto h = hyp2f1(1.0 / 3, 2.0 / 3, 4.0 / 3, x);
        CHECK(std::abs(g.value - h.value) <= g.abs_error_bound + h.abs_error_bound);
        CHECK(h.abs_error_bound < 1e-12);
    }
}

TEST_CASE("crossing formulas") {
    CHECK(cardy(0.0).value == 0.0);
    CHECK(cardy(1.0).value == 1.0);
    CHECK(std::abs(cardy(0.5).value - 0.5) < 1e-13);
    for (int i = 1; i <= 99; ++i) {
        const double l = i / 100.0;
        CHECK(std::abs(cardy(l).value + cardy(1 - l).value - 1.0) < 1e-10);
        if (l <= 0.95) {
            const double w = watts(l).value, c = cardy(l).value, n = expected_crossing_clusters(l).value;
            CHECK(0.0 <= w);
            CHECK(w <= c);
            CHECK(c <= n);
        }
    }
    CHECK(watts(0.0).value == 0.0);
    CHECK(expected_crossing_clusters(0.0).value == 0.0);
    const double l = 1e-4;
    CHECK(std::abs((cardy(l).value - watts(l).value) / l / kWattsSlope - 1.0) < 1e-4);
    const double s = 0.01;
    const double ratio = (expected_crossing_clusters(s).value - cardy(s).value) / (kHalfPlanePrefactor * s * s / 10);
    CHECK(ratio >= 0.98);
    CHECK(ratio <= 1.02);
    CHECK_THROWS_AS((void)watts(0.96), RangeError);
    CHECK_THROWS_AS((void)cardy(1.5), RangeError);
}

TEST_CASE("cross-ratios") {
    for (const double eps : {0.01, 0.25, 1.0, 3.0}) {
        const double a = std::sqrt(eps), b = std::sqrt(1 + eps);
        CHECK(cross_ratio(-a, a, b, -b).lambda == doctest::Approx(cut_plane_lambda(eps).lambda).epsilon(1e-13));
    }
    auto mob = [](cd z) { return (2.0 * z + 1.0) / (z + 3.0); };
    const cd w[4] = {cd(0.1, 0.2), cd(-1, 0.5), cd(2, -1), cd(0.3, 3)};
    const auto before = cross_ratio_complex(w[0], w[1], w[2], w[3]);
    const auto after = cross_ratio_complex(mob(w[0]), mob(w[1]), mob(w[2]), mob(w[3]));
    CHECK(std::abs(before - after) < 1e-12);
    CHECK(cross_ratio(-1.0, 0.0, 1.0, 1e14).lambda == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)cross_ratio(1.0, 1.0, 2.0, 3.0), ArgumentError);
    CHECK(std::pow(cut_plane_lambda(1.0).lambda, 2) == doctest::Approx(32 / (17 + 12 * std::sqrt(2.0))).epsilon(1e-14));
    const double e = 1e-8;
    const double q = std::pow(cut_plane_lambda(e).lambda, 2) / (16 * e);
    CHECK(q >= 0.999);
    CHECK(q <= 1.001);
    CHECK_THROWS_AS((void)cut_plane_lambda(0.0), ArgumentError);
}

TEST_CASE("half-plane both-colour crossing limit") {
    CHECK(std::abs(halfplane_wprime_limit(1e-6).value / 1e-6 / kWattsSlope - 1.0) < 1e-4);
    CHECK(halfplane_wprime_linear(0.1) == doctest::Approx(2 * kHalfPlanePrefactor * 0.1));
    CHECK(halfplane_wprime_limit(1.0).value == doctest::Approx(kWattsSlope * 0.5 * hyp3f2_special(0.5).value));
    double prev = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double v = halfplane_wprime_limit(i / 10.0).value;
        CHECK(v > prev);
        prev = v;
    }
    CHECK(kHalfPlanePrefactor == doctest::Approx(0.1378322).epsilon(1e-6));
    CHECK(kFullPlaneBound == doctest::Approx(0.2205316).epsilon(1e-6));
    CHECK(kFullPlaneConjecture == doctest::Approx(0.0861451).epsilon(1e-6));
}
