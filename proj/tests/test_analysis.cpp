#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tperc/analysis.hpp"
#include "tperc/cft.hpp"
#include "tperc/errors.hpp"

using namespace tperc;

namespace {

std::vector<FitPoint> model_points(double A, double B, double C, double se = 0.01) {
    std::vector<FitPoint> pts;
    for (const double n : {8.0, 16.0, 32.0, 64.0, 128.0}) pts.push_back({n, A * n + B * std::log(n) + C, se});
    return pts;
}

}  // namespace

TEST_CASE("exact recovery of A n + B log n + C") {
    const auto f = fit_n_log(model_points(2.0, 0.3, 1.0));
    CHECK(std::abs(f.A - 2.0) < 1e-9);
    CHECK(std::abs(f.B - 0.3) < 1e-9);
    CHECK(std::abs(f.C - 1.0) < 1e-9);
    CHECK(f.dof == 2);
    CHECK(f.residual_norm < 1e-6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f.covariance[i][j] == doctest::Approx(f.covariance[j][i]));
    CHECK(f.covariance[0][0] >= 0);
    CHECK(f.covariance[1][1] >= 0);
    CHECK(f.covariance[2][2] >= 0);
}

TEST_CASE("fit preconditions") {
    auto pts = model_points(2.0, 0.3, 1.0);
    pts.resize(3);
    CHECK_THROWS_AS(fit_n_log(pts), ArgumentError);
    auto zero = model_points(2.0, 0.3, 1.0, 0.0);
    CHECK_THROWS_AS(fit_n_log(zero), ArgumentError);
    // Four distinct but numerically indistinguishable n.
    std::vector<FitPoint> flat;
    for (int i = 0; i < 4; ++i) flat.push_back({1e15 + i, 1.0, 0.1});
    CHECK_THROWS_AS(fit_n_log(flat), NumericError);
}

TEST_CASE("fit is invariant under reordering and common stderr scaling") {
    auto pts = model_points(0.05, 0.14, 0.7);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (auto& p : pts) p.mean += noise(rng), p.std_error = 0.01 * (1 + p.n / 100);
    const auto base = fit_n_log(pts);
    std::reverse(pts.begin(), pts.end());
    const auto rev = fit_n_log(pts);
    for (auto& p : pts) p.std_error *= 7.0;
    const auto scaled = fit_n_log(pts);
    CHECK(rev.B == doctest::Approx(base.B).epsilon(1e-12));
    CHECK(scaled.A == doctest::Approx(base.A).epsilon(1e-12));
    CHECK(scaled.B == doctest::Approx(base.B).epsilon(1e-12));
    CHECK(scaled.C == doctest::Approx(base.C).epsilon(1e-12));
}

TEST_CASE("reported standard errors are calibrated") {
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> noise(0.0, 0.01);
    int hits = 0;
    for (int rep = 0; rep < 100; ++rep) {
        auto pts = model_points(2.0, 0.3, 1.0);
        for (auto& p : pts) p.mean += noise(rng);
        const auto f = fit_n_log(pts);
        hits += std::abs(f.B - 0.3) <= 3.0 * f.se(1);
    }
    CHECK(hits >= 95);
}

TEST_CASE("log fit and eps extrapolation") {
    std::vector<FitPoint> pts;
    for (const double n : {64.0, 128.0, 256.0}) pts.push_back({n, 0.14 * std::log(n) - 0.2, 0.01});
    const auto f = fit_log(pts);
    CHECK(f.B == doctest::Approx(0.14).epsilon(1e-10));
    CHECK(f.C == doctest::Approx(-0.2).epsilon(1e-10));
    pts.pop_back();
    CHECK_THROWS_AS(fit_log(pts), ArgumentError);

    const std::vector<EpsPoint> line{{1.0, 0.3, 0.01}, {0.5, 0.2, 0.01}, {0.25, 0.15, 0.01}};
    const auto e = extrapolate_eps(line);
    CHECK(e.value == doctest::Approx(0.1));
    CHECK(e.slope == doctest::Approx(0.2));
    const std::vector<EpsPoint> same{{1.0, 0.4, 0.0}, {0.5, 0.4, 0.0}};
    CHECK(extrapolate_eps(same).value == doctest::Approx(0.4));
    CHECK_THROWS_AS(extrapolate_eps(std::span(same).first(1)), ArgumentError);
}

namespace {

WindowGrid flat_grid(int n, double eps, double L) {
    WindowGrid g;
    g.partition = make_partition(n, eps);
    g.truncation = 4 * n;
    const double log_n = std::log(static_cast<double>(n));
    g.ray_first = {"ray_first", L * log_n, 0.01, 1000, g.truncation, {}};
    g.f0 = {"f0", 0.1, 0.01, 1000, g.truncation, {}};
    g.window_sum = {"window_sum", L * log_n - 0.1, 0.01, 1000, g.truncation, {}};
    g.L_hat = {"L_hat", L, 0.001, 1000, g.truncation, {}};
    return g;
}

}  // namespace

TEST_CASE("prefactor report") {
    const std::vector<WindowGrid> grids{flat_grid(256, 1.0, 0.15), flat_grid(256, 0.5, 0.15)};
    const auto r = prefactor_report(grids);
    REQUIRE(r.eps_extrapolated.size() == 1);
    CHECK(r.eps_extrapolated[0].second.value == doctest::Approx(0.15));
    CHECK(r.extrapolated == doctest::Approx(0.15));
    CHECK(r.reference == doctest::Approx(0.1378322).epsilon(1e-6));
    CHECK(to_json(r).dump() == to_json(prefactor_report(grids)).dump());
    CHECK_THROWS_AS(prefactor_report(std::span(grids).first(1)), ArgumentError);

    // Three n values: the headline value is the slope of E[ray-first] in log n.
    std::vector<WindowGrid> multi;
    for (const int n : {64, 256, 1024})
        for (const double e : {1.0, 0.5}) multi.push_back(flat_grid(n, e, 0.13));
    const auto rm = prefactor_report(multi);
    REQUIRE(rm.n_fit.has_value());
    CHECK(rm.extrapolated == doctest::Approx(0.13).epsilon(1e-9));

    auto full = flat_grid(256, 1.0, 0.1);
    full.kind = DomainKind::FullPlane;
    std::vector<WindowGrid> mixed{flat_grid(256, 1.0, 0.1), full};
    CHECK_THROWS_AS(prefactor_report(mixed), ArgumentError);
}
