#include "tperc/stats.hpp"

#include <cmath>
#include <limits>

#include "tperc/errors.hpp"

namespace tperc {

void Accumulator::merge(const Accumulator& other) {
    if (other.observable_ != observable_ || other.fingerprint_ != fingerprint_)
        throw ArgumentError("merge: accumulators for " + observable_ + "/" + fingerprint_ + " and " +
                            other.observable_ + "/" + other.fingerprint_);
    trials_ += other.trials_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
}

double Accumulator::mean() const {
    return trials_ > 0 ? sum_ / static_cast<double>(trials_) : std::numeric_limits<double>::quiet_NaN();
}

double Accumulator::variance() const {
    if (trials_ < 2) return 0.0;
    const double n = static_cast<double>(trials_);
    const double v = (sum_sq_ - sum_ * sum_ / n) / (n - 1.0);
    return v > 0.0 ? v : 0.0;
}

double Accumulator::std_error() const {
    return trials_ > 0 ? std::sqrt(variance() / static_cast<double>(trials_)) : 0.0;
}

Accumulator Accumulator::from_fields(std::string observable, std::string fingerprint, std::int64_t trials, double sum,
                                     double sum_sq) {
    if (trials < 0) throw ArgumentError("accumulator: negative trial count");
    Accumulator a(std::move(observable), std::move(fingerprint));
    a.trials_ = trials;
    a.sum_ = sum;
    a.sum_sq_ = sum_sq;
    return a;
}

RatioEstimate ratio_of_means(const Accumulator& x, const Accumulator& y, const Accumulator& xy) {
    const auto n = static_cast<double>(x.trials());
    if (x.trials() != y.trials() || x.trials() != xy.trials())
        throw ArgumentError("ratio_of_means: accumulators cover different trials");
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    if (x.trials() < 2 || x.sum() == 0.0) return {kNaN, kNaN};
    const double mx = x.mean(), my = y.mean();
    const double cov = (xy.sum() - n * mx * my) / (n - 1.0);
    const double r = my / mx;
    const double v = (y.variance() - 2.0 * r * cov + r * r * x.variance()) / (mx * mx * n);
    return {r, std::sqrt(v > 0.0 ? v : 0.0)};
}

EstimateReport make_report(const Accumulator& a, int truncation, double scale) {
    EstimateReport r;
    r.observable = a.observable();
    r.mean = a.mean() * scale;
    r.std_error = a.std_error() * std::abs(scale);
    r.trials = a.trials();
    r.truncation = truncation;
    return r;
}

}  // namespace tperc
