// Mergeable Monte Carlo statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace tperc {

// Running (count, sum, sum of squares) for one observable under one parameter set.
class Accumulator {
public:
    Accumulator() = default;
    Accumulator(std::string observable, std::string fingerprint)
        : observable_(std::move(observable)), fingerprint_(std::move(fingerprint)) {}

    void add(double x) {
        ++trials_;
        sum_ += x;
        sum_sq_ += x * x;
    }
    // Field-wise addition; throws ArgumentError unless observable and fingerprint match.
    void merge(const Accumulator& other);

    [[nodiscard]] const std::string& observable() const { return observable_; }
    [[nodiscard]] const std::string& fingerprint() const { return fingerprint_; }
    [[nodiscard]] std::int64_t trials() const { return trials_; }
    [[nodiscard]] double sum() const { return sum_; }
    [[nodiscard]] double sum_sq() const { return sum_sq_; }

    [[nodiscard]] double mean() const;
    // Unbiased sample variance (trials - 1 in the denominator); 0 below two trials.
    [[nodiscard]] double variance() const;
    [[nodiscard]] double std_error() const;

    // Restores a stored accumulator.
    static Accumulator from_fields(std::string observable, std::string fingerprint, std::int64_t trials, double sum,
                                   double sum_sq);

private:
    std::string observable_;
    std::string fingerprint_;
    std::int64_t trials_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

struct RatioEstimate {
    double ratio = 0.0;
    double std_error = 0.0;
};
// mean(y) / mean(x) for paired per-trial observations, with a delta-method
// standard error; `xy` accumulates x*y over the same trials. NaN if mean(x) is 0.
RatioEstimate ratio_of_means(const Accumulator& x, const Accumulator& y, const Accumulator& xy);

struct EstimateReport {
    std::string observable;
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    int truncation = 0;
    std::optional<double> doubled_delta;  // mean at 2*truncation minus mean at truncation
};

EstimateReport make_report(const Accumulator& a, int truncation, double scale = 1.0);

}  // namespace tperc
