// Weighted fits and prefactor reporting.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "tperc/estimators.hpp"

namespace tperc {

struct FitPoint {
    double n = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
};

// mean = A n + B log n + C, weights 1/stderr^2.
struct FitResult {
    double A = 0.0, B = 0.0, C = 0.0;
    std::array<std::array<double, 3>, 3> covariance{};
    double residual_norm = 0.0;  // sqrt of the weighted residual sum of squares
    int dof = 0;
    [[nodiscard]] double se(int j) const;
};
// Needs >= 4 distinct n (ArgumentError) and positive stderrs; a singular design
// throws NumericError.
FitResult fit_n_log(std::span<const FitPoint> points);

// mean = B log n + C.
struct LogFit {
    double B = 0.0, C = 0.0;
    std::array<std::array<double, 2>, 2> covariance{};
    double residual_norm = 0.0;
    int dof = 0;
    [[nodiscard]] double se_B() const;
    [[nodiscard]] double se_C() const;
};
// Needs >= 3 distinct n.
LogFit fit_log(std::span<const FitPoint> points);

struct EpsPoint {
    double eps = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
};
// Weighted straight line in eps, evaluated at eps = 0.
struct Extrapolation {
    double value = 0.0;
    double std_error = 0.0;
    double slope = 0.0;
    double slope_std_error = 0.0;
};
// Needs >= 2 distinct eps; zero stderrs are treated as equal weights.
Extrapolation extrapolate_eps(std::span<const EpsPoint> points);

struct LRow {
    int n = 0;
    double eps = 0.0;
    int truncation = 0;
    EstimateReport L_hat;       // (f0 + sum T) / log n
    EstimateReport L_windows;   // sum T / log(n / a(1))
    EstimateReport f0_share;    // f0 / log n
    std::optional<EstimateReport> L_bound;
};

struct WindowLine {
    int n = 0;
    double eps = 0.0;
    int window = 0, lo = 0, hi = 0;
    EstimateReport value;   // E[T(i)]/eps, or E[T~(i)]/eps for cut rows
    double prediction = 0.0;
    bool cut = false;
    std::optional<EstimateReport> B;
};

struct PrefactorReport {
    DomainKind kind = DomainKind::HalfPlane;
    double reference = 0.0;  // prefactor the half-plane estimate aims at / full-plane bound
    double conjecture = 0.0;  // full plane only
    std::vector<LRow> rows;
    std::vector<WindowLine> windows;
    std::vector<std::pair<int, Extrapolation>> eps_extrapolated;        // L_hat per n
    std::vector<std::pair<int, Extrapolation>> eps_extrapolated_bound;  // L_bound per n
    std::optional<LogFit> n_fit;  // E[f0 + sum T](n) = B log n + C over the grid's n values
    // The headline "extrapolated L": the n-fit slope when available, else the
    // eps-extrapolation at the largest n.
    double extrapolated = 0.0;
    double extrapolated_std_error = 0.0;
};

// Grids must share one domain kind and cover >= 2 eps values.
PrefactorReport prefactor_report(std::span<const WindowGrid> grids);

Json to_json(const PrefactorReport& r);

}  // namespace tperc
