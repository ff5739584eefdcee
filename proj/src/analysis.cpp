#include "tperc/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tperc/cft.hpp"
#include "tperc/errors.hpp"

namespace tperc {

namespace {

std::size_t distinct_n(std::span<const FitPoint> pts) {
    std::set<double> s;
    for (const auto& p : pts) s.insert(p.n);
    return s.size();
}

void require_weights(std::span<const FitPoint> pts) {
    for (const auto& p : pts) {
        if (!(p.std_error > 0.0) || !std::isfinite(p.mean)) throw ArgumentError("fit: stderrs must be positive and means finite");
        if (!(p.n > 0.0)) throw ArgumentError("fit: n must be positive");
    }
}

struct Wls {
    Eigen::VectorXd beta;
    Eigen::MatrixXd cov;
    double residual_norm = 0.0;
};

// Solves min |W^(1/2) (X b - y)| and returns (X^T W X)^-1 as the covariance.
Wls weighted_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& sigma) {
    const Eigen::VectorXd w = sigma.cwiseInverse();
    const Eigen::MatrixXd Xw = w.asDiagonal() * X;
    const Eigen::VectorXd yw = w.cwiseProduct(y);
    // Column equilibration keeps n and log n on comparable scales.
    const Eigen::VectorXd scale = Xw.colwise().norm().transpose();
    if ((scale.array() == 0.0).any()) throw NumericError("fit: design matrix has a zero column");
    const Eigen::MatrixXd Xs = Xw * scale.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xs);
    qr.setThreshold(1e-10);
    if (qr.rank() < X.cols()) throw NumericError("fit: design matrix is rank deficient");
    Wls out;
    out.beta = scale.cwiseInverse().asDiagonal() * qr.solve(yw);
    const Eigen::MatrixXd normal = Xw.transpose() * Xw;
    out.cov = normal.ldlt().solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    out.residual_norm = (Xw * out.beta - yw).norm();
    return out;
}

}  // namespace

double FitResult::se(int j) const {
    return std::sqrt(std::max(0.0, covariance[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]));
}
double LogFit::se_B() const { return std::sqrt(std::max(0.0, covariance[0][0])); }
double LogFit::se_C() const { return std::sqrt(std::max(0.0, covariance[1][1])); }

FitResult fit_n_log(std::span<const FitPoint> points) {
    if (distinct_n(points) < 4) throw ArgumentError("fit_n_log: need at least 4 distinct n");
    require_weights(points);
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd X(m, 3);
    Eigen::VectorXd y(m), s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        X(i, 0) = p.n;
        X(i, 1) = std::log(p.n);
        X(i, 2) = 1.0;
        y(i) = p.mean;
        s(i) = p.std_error;
    }
    const Wls w = weighted_least_squares(X, y, s);
    FitResult r;
    r.A = w.beta(0);
    r.B = w.beta(1);
    r.C = w.beta(2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w.cov(i, j);
    r.residual_norm = w.residual_norm;
    r.dof = static_cast<int>(m) - 3;
    return r;
}

LogFit fit_log(std::span<const FitPoint> points) {
    if (distinct_n(points) < 3) throw ArgumentError("fit_log: need at least 3 distinct n");
    require_weights(points);
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd y(m), s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        X(i, 0) = std::log(p.n);
        X(i, 1) = 1.0;
        y(i) = p.mean;
        s(i) = p.std_error;
    }
    const Wls w = weighted_least_squares(X, y, s);
    LogFit r;
    r.B = w.beta(0);
    r.C = w.beta(1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w.cov(i, j);
    r.residual_norm = w.residual_norm;
    r.dof = static_cast<int>(m) - 2;
    return r;
}

Extrapolation extrapolate_eps(std::span<const EpsPoint> points) {
    std::set<double> distinct;
    for (const auto& p : points) distinct.insert(p.eps);
    if (distinct.size() < 2) throw ArgumentError("extrapolate_eps: need at least 2 distinct eps");
    const bool weighted = std::all_of(points.begin(), points.end(), [](const EpsPoint& p) { return p.std_error > 0.0; });
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd X(m, 2);
    Eigen::VectorXd y(m), s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        X(i, 0) = 1.0;
        X(i, 1) = p.eps;
        y(i) = p.mean;
        s(i) = weighted ? p.std_error : 1.0;
    }
    const Wls w = weighted_least_squares(X, y, s);
    Extrapolation e;
    e.value = w.beta(0);
    e.slope = w.beta(1);
    if (weighted) {
        e.std_error = std::sqrt(std::max(0.0, w.cov(0, 0)));
        e.slope_std_error = std::sqrt(std::max(0.0, w.cov(1, 1)));
    }
    return e;
}

PrefactorReport prefactor_report(std::span<const WindowGrid> grids) {
    if (grids.empty()) throw ArgumentError("prefactor_report: no grids");
    PrefactorReport r;
    r.kind = grids.front().kind;
    const bool half = r.kind == DomainKind::HalfPlane;
    r.reference = half ? cft::kHalfPlanePrefactor : cft::kFullPlaneBound;
    r.conjecture = half ? 0.0 : cft::kFullPlaneConjecture;
    const double window_slope = half ? cft::kHalfPlanePrefactor : cft::kFullPlaneConjecture;

    std::set<double> eps_values;
    std::map<int, std::vector<EpsPoint>> by_n, bound_by_n;
    std::map<int, EstimateReport> ray_first_by_n;
    for (const auto& g : grids) {
        if (g.kind != r.kind) throw ArgumentError("prefactor_report: grids mix domain kinds");
        const ScalePartition& p = g.partition;
        eps_values.insert(p.eps);
        const double log_n = std::log(static_cast<double>(p.n));

        LRow row;
        row.n = p.n;
        row.eps = p.eps;
        row.truncation = g.truncation;
        row.L_hat = g.L_hat;
        const double window_span = std::log(static_cast<double>(p.n) / p.a.front());
        row.L_windows = g.window_sum;
        row.L_windows.observable = "L_windows";
        row.L_windows.mean /= window_span;
        row.L_windows.std_error /= window_span;
        row.f0_share = g.f0;
        row.f0_share.observable = "f0_share";
        row.f0_share.mean /= log_n;
        row.f0_share.std_error /= log_n;
        row.L_bound = g.L_bound;
        r.rows.push_back(row);

        by_n[p.n].push_back({p.eps, g.L_hat.mean, g.L_hat.std_error});
        if (g.L_bound) bound_by_n[p.n].push_back({p.eps, g.L_bound->mean, g.L_bound->std_error});
        ray_first_by_n.try_emplace(p.n, g.ray_first);

        // Cut-plane cross-ratios approach 1 as eps grows (0.97 at eps = 1); the
        // series tail bound still holds there, it only needs more terms.
        cft::SeriesOptions near_one;
        near_one.x_max = 0.999;
        const double cut_prediction = half ? 0.0 : cft::cut_plane_window_prediction(p.eps, near_one).value;
        for (const auto& w : g.rows) {
            WindowLine line;
            line.n = p.n;
            line.eps = p.eps;
            line.window = w.window;
            line.lo = w.lo;
            line.hi = w.hi;
            line.value = w.T_over_eps;
            line.prediction = w.hi > w.lo ? window_slope * std::log(static_cast<double>(w.hi) / w.lo) / p.eps : 0.0;
            r.windows.push_back(line);
            if (w.T_tilde_over_eps) {
                line.value = *w.T_tilde_over_eps;
                line.prediction = cut_prediction;
                line.cut = true;
                line.B = w.B;
                r.windows.push_back(line);
            }
        }
    }
    if (eps_values.size() < 2) throw ArgumentError("prefactor_report: need at least 2 eps values");

    for (const auto& [n, pts] : by_n)
        if (pts.size() >= 2) r.eps_extrapolated.emplace_back(n, extrapolate_eps(pts));
    for (const auto& [n, pts] : bound_by_n)
        if (pts.size() >= 2) r.eps_extrapolated_bound.emplace_back(n, extrapolate_eps(pts));

    if (ray_first_by_n.size() >= 3) {
        std::vector<FitPoint> pts;
        for (const auto& [n, rep] : ray_first_by_n) pts.push_back({static_cast<double>(n), rep.mean, rep.std_error});
        r.n_fit = fit_log(pts);
        r.extrapolated = r.n_fit->B;
        r.extrapolated_std_error = r.n_fit->se_B();
    } else if (!r.eps_extrapolated.empty()) {
        r.extrapolated = r.eps_extrapolated.back().second.value;
        r.extrapolated_std_error = r.eps_extrapolated.back().second.std_error;
    }
    return r;
}

namespace {

Json report_json(const EstimateReport& e) {
    Json j = {{"observable", e.observable}, {"mean", e.mean}, {"stderr", e.std_error}, {"trials", e.trials},
              {"truncation", e.truncation}};
    if (e.doubled_delta) j["doubled_delta"] = *e.doubled_delta;
    return j;
}

Json extrapolation_json(const std::vector<std::pair<int, Extrapolation>>& v) {
    Json a = Json::array();
    for (const auto& [n, e] : v)
        a.push_back({{"n", n}, {"value", e.value}, {"stderr", e.std_error}, {"slope", e.slope},
                     {"slope_stderr", e.slope_std_error}});
    return a;
}

}  // namespace

Json to_json(const PrefactorReport& r) {
    Json j;
    j["domain"] = to_string(r.kind);
    j["reference"] = r.reference;
    if (r.kind == DomainKind::FullPlane) j["conjecture"] = r.conjecture;
    j["rows"] = Json::array();
    for (const auto& row : r.rows) {
        Json x = {{"n", row.n},
                  {"eps", row.eps},
                  {"truncation", row.truncation},
                  {"L_hat", report_json(row.L_hat)},
                  {"L_windows", report_json(row.L_windows)},
                  {"f0_share", report_json(row.f0_share)}};
        if (row.L_bound) x["L_bound"] = report_json(*row.L_bound);
        j["rows"].push_back(x);
    }
    j["eps_extrapolated"] = extrapolation_json(r.eps_extrapolated);
    if (!r.eps_extrapolated_bound.empty()) j["eps_extrapolated_bound"] = extrapolation_json(r.eps_extrapolated_bound);
    if (r.n_fit)
        j["n_fit"] = {{"B", r.n_fit->B}, {"B_stderr", r.n_fit->se_B()}, {"C", r.n_fit->C},
                      {"C_stderr", r.n_fit->se_C()}, {"residual_norm", r.n_fit->residual_norm}, {"dof", r.n_fit->dof}};
    j["extrapolated"] = {{"value", r.extrapolated}, {"stderr", r.extrapolated_std_error}};
    return j;
}

}  // namespace tperc
