#include "tperc/cft.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <limits>
#include <string>

#include "tperc/errors.hpp"

namespace tperc::cft {

namespace {

constexpr double kRound = std::numeric_limits<double>::epsilon();

void check_argument(double x, const SeriesOptions& opt, const char* who) {
    if (!(x >= 0.0) || x > opt.x_max)
        throw RangeError(std::string(who) + ": argument outside [0, x_max]; use a symmetry identity");
}

// Sum of t_0 = 1, t_{k+1} = t_k * ratio(k) * x. `rho(K)` must bound
// |ratio(j)| * x for all j >= K; the tail after term K is then |t_{K+1}| / (1 - rho).
template <class Ratio, class Rho>
FormulaValue power_series(double x, const SeriesOptions& opt, Ratio ratio, Rho rho) {
    double term = 1.0, sum = 1.0, abs_sum = 1.0;
    for (int k = 0; k < opt.max_terms; ++k) {
        const double next = term * ratio(k) * x;
        const double r = rho(k + 1);
        if (r < 1.0) {
            const double tail = std::abs(next) / (1.0 - r);
            if (tail <= opt.tolerance * std::abs(sum) || next == 0.0)
                return {sum, tail + 4.0 * kRound * abs_sum};
        }
        term = next;
        sum += term;
        abs_sum += std::abs(term);
    }
    throw NumericError("series did not converge within max_terms");
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw ArgumentError("gamma_fn: x must be positive");
    // g = 7, n = 9 coefficients.
    static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    const double z = x - 1.0;
    double s = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) s += c[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

FormulaValue hyp2f1(double a, double b, double c, double x, const SeriesOptions& opt) {
    if (c <= 0.0 && c == std::floor(c)) throw ArgumentError("hyp2f1: c is a nonpositive integer");
    check_argument(x, opt, "hyp2f1");
    // ratio(j) - 1 = ((a+b-c-1) j + ab - c) / ((c+j)(j+1)), bounded for j >= K by delta(K).
    const double spread = std::abs(a + b - c - 1.0) + std::abs(a * b - c);
    return power_series(
        x, opt, [&](int k) { return (a + k) * (b + k) / ((c + k) * (k + 1.0)); },
        [&](int K) {
            const double den = static_cast<double>(K) + std::min(c, 1.0);
            return den <= 0.0 ? 2.0 : x * (1.0 + spread / den);
        });
}

FormulaValue hyp3f2_special(double x, const SeriesOptions& opt) {
    check_argument(x, opt, "hyp3f2_special");
    // (1+k)(1+k)(4/3+k) / ((5/3+k)(2+k)(1+k)) < 1 for all k.
    return power_series(
        x, opt, [](int k) { return (1.0 + k) * (4.0 / 3.0 + k) / ((5.0 / 3.0 + k) * (2.0 + k)); },
        [x](int) { return x; });
}

FormulaValue cardy(double lambda, const SeriesOptions& opt) {
    if (!(lambda >= 0.0) || lambda > 1.0) throw RangeError("cardy: lambda outside [0, 1]");
    if (lambda == 0.0) return {0.0, 0.0};
    if (lambda == 1.0) return {1.0, 0.0};
    if (lambda > opt.x_max) {
        const auto v = cardy(1.0 - lambda, opt);
        return {1.0 - v.value, v.abs_error_bound + kRound};
    }
    const double g = gamma_fn(1.0 / 3.0);
    const double pref = 2.0 * kPi * kSqrt3 / (g * g * g) * std::cbrt(lambda);
    const auto f = hyp2f1(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, lambda, opt);
    const double v = pref * f.value;
    return {v, pref * f.abs_error_bound + 16.0 * kRound * std::abs(v)};
}

FormulaValue watts(double lambda, const SeriesOptions& opt) {
    check_argument(lambda, opt, "watts");
    const auto c = cardy(lambda, opt);
    const auto f = hyp3f2_special(lambda, opt);
    const double corr = kWattsSlope * lambda * f.value;
    return {c.value - corr, c.abs_error_bound + kWattsSlope * lambda * f.abs_error_bound + 4.0 * kRound * corr};
}

FormulaValue crossing_clusters_excess(double lambda, const SeriesOptions& opt) {
    check_argument(lambda, opt, "crossing_clusters_excess");
    // -log(1-x) - x 3F2(x) = sum_k x^{k+1} (1/(k+1) - c_k), with 0 <= c_k <= 1/(k+1),
    // so the tail after K terms is at most x^{K+2} / ((K+2)(1-x)).
    const double x = lambda;
    double ck = 1.0, xp = x, sum = 0.0;
    for (int k = 0; k < opt.max_terms; ++k) {
        sum += xp * (1.0 / (k + 1.0) - ck);
        ck *= (1.0 + k) * (4.0 / 3.0 + k) / ((5.0 / 3.0 + k) * (2.0 + k));
        xp *= x;
        const double tail = xp / ((k + 2.0) * (1.0 - x));
        if (tail <= opt.tolerance * sum || xp == 0.0)
            return {kHalfPlanePrefactor * sum, kHalfPlanePrefactor * (tail + 8.0 * kRound * sum)};
    }
    throw NumericError("crossing_clusters_excess: no convergence");
}

FormulaValue expected_crossing_clusters(double lambda, const SeriesOptions& opt) {
    check_argument(lambda, opt, "expected_crossing_clusters");
    const auto c = cardy(lambda, opt);
    const auto e = crossing_clusters_excess(lambda, opt);
    return {c.value + e.value, c.abs_error_bound + e.abs_error_bound};
}

std::complex<double> cross_ratio_complex(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                                         std::complex<double> w4) {
    if (w1 == w2 || w1 == w3 || w1 == w4 || w2 == w3 || w2 == w4 || w3 == w4)
        throw ArgumentError("cross_ratio: coincident points");
    return (w1 - w2) * (w4 - w3) / ((w1 - w3) * (w4 - w2));
}

CrossRatio cross_ratio(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                       std::complex<double> w4) {
    const auto z = cross_ratio_complex(w1, w2, w3, w4);
    constexpr double slack = 1e-12;
    if (std::abs(z.imag()) > slack * std::max(1.0, std::abs(z)) || z.real() < -slack || z.real() > 1.0 + slack)
        throw ArgumentError("cross_ratio: points do not give a real cross-ratio in [0, 1]");
    return {std::clamp(z.real(), 0.0, 1.0)};
}

CrossRatio cut_plane_lambda(double eps) {
    if (!(eps > 0.0)) throw ArgumentError("cut_plane_lambda: eps must be positive");
    const double s = std::sqrt(eps), t = std::sqrt(1.0 + eps);
    return {4.0 * s * t / ((s + t) * (s + t))};
}

FormulaValue halfplane_wprime_limit(double eps, const SeriesOptions& opt) {
    if (!(eps > 0.0)) throw ArgumentError("halfplane_wprime_limit: eps must be positive");
    const double x = eps / (1.0 + eps);
    const auto f = hyp3f2_special(x, opt);
    const double v = kWattsSlope * x * f.value;
    return {v, kWattsSlope * x * f.abs_error_bound + 4.0 * kRound * v};
}

double halfplane_wprime_linear(double eps) { return 2.0 * kHalfPlanePrefactor * eps; }

FormulaValue cut_plane_window_prediction(double eps, const SeriesOptions& opt) {
    const auto e = crossing_clusters_excess(cut_plane_lambda(eps).lambda, opt);
    return {e.value / eps, e.abs_error_bound / eps};
}

}  // namespace tperc::cft
