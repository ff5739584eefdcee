// Scaling-limit formulas for crossing events of critical percolation.
//
// Every series evaluation returns its value together with a bound on the
// truncation (plus a rounding allowance), so callers can compare against
// tolerances without guessing how many terms were summed.
#pragma once

#include <complex>

namespace tperc::cft {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.73205080756887729353;

// sqrt(3) / (4 pi): log-prefactor of the half-plane segment count.
inline constexpr double kHalfPlanePrefactor = kSqrt3 / (4.0 * kPi);
// (8/5) sqrt(3) / (4 pi): proven upper bound in the full plane.
inline constexpr double kFullPlaneBound = 1.6 * kHalfPlanePrefactor;
// 5 sqrt(3) / (32 pi): conjectured full-plane prefactor.
inline constexpr double kFullPlaneConjecture = 5.0 * kSqrt3 / (32.0 * kPi);
// sqrt(3) / (2 pi): slope of the both-crossings correction.
inline constexpr double kWattsSlope = kSqrt3 / (2.0 * kPi);

struct FormulaValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

struct SeriesOptions {
    double x_max = 0.95;       // series refuse arguments above this
    double tolerance = 1e-16;  // stop once the tail bound drops below tolerance * |partial sum|
    int max_terms = 200000;
};

// Lanczos approximation, x > 0.
double gamma_fn(double x);

// Gauss 2F1(a, b; c; x) by its power series, 0 <= x <= x_max.
// ArgumentError if c is a nonpositive integer, RangeError outside [0, x_max].
FormulaValue hyp2f1(double a, double b, double c, double x, const SeriesOptions& opt = {});

// 3F2(1, 1, 4/3; 5/3, 2; x), 0 <= x <= x_max.
FormulaValue hyp3f2_special(double x, const SeriesOptions& opt = {});

// Probability that the open cluster connects the two arcs of a conformal
// rectangle with cross-ratio lambda, any lambda in [0, 1].
FormulaValue cardy(double lambda, const SeriesOptions& opt = {});

// Probability of both crossings, lambda in [0, x_max].
FormulaValue watts(double lambda, const SeriesOptions& opt = {});

// Expected number of distinct crossing clusters, lambda in [0, x_max].
FormulaValue expected_crossing_clusters(double lambda, const SeriesOptions& opt = {});

// expected_crossing_clusters - cardy, summed as one positive series (no cancellation).
FormulaValue crossing_clusters_excess(double lambda, const SeriesOptions& opt = {});

// (w1 - w2)(w4 - w3) / ((w1 - w3)(w4 - w2)); ArgumentError on coincident points.
std::complex<double> cross_ratio_complex(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                                         std::complex<double> w4);

struct CrossRatio {
    double lambda = 0.0;
};

// Real cross-ratio in [0, 1]; ArgumentError if the points do not give one.
CrossRatio cross_ratio(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                       std::complex<double> w4);

// Cross-ratio of the slit-plane quadrilateral with arcs [1, 1+eps] and (-inf, 0].
CrossRatio cut_plane_lambda(double eps);

// Limit of P(open and closed crossing from (-inf, 1] to [k, k(1+eps)]) in the half plane.
FormulaValue halfplane_wprime_limit(double eps, const SeriesOptions& opt = {});
// Its small-eps linearization 2 (sqrt 3 / 4 pi) eps.
double halfplane_wprime_linear(double eps);

// Prediction for the cut-plane window count divided by eps: excess(lambda(eps)) / eps.
FormulaValue cut_plane_window_prediction(double eps, const SeriesOptions& opt = {});

}  // namespace tperc::cft
