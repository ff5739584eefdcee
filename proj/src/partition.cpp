#include "tperc/partition.hpp"

#include <cmath>

#include "tperc/errors.hpp"

namespace tperc {

ScalePartition make_partition(int n, double eps) {
    if (n < 3) throw ArgumentError("make_partition: n must be at least 3");
    if (!(eps > 0.0)) throw ArgumentError("make_partition: eps must be positive");
    const double ln = std::log(static_cast<double>(n));
    ScalePartition p;
    p.n = n;
    p.eps = eps;
    p.M = static_cast<int>(std::floor((ln - 0.5 * std::log(ln)) / std::log1p(eps)));
    p.a.resize(static_cast<std::size_t>(p.M) + 1);
    for (int j = 1; j <= p.M + 1; ++j) {
        const double v = static_cast<double>(n) / std::pow(1.0 + eps, p.M - j + 1);
        // Guard against pow rounding just below an exact integer.
        p.a[static_cast<std::size_t>(j - 1)] = static_cast<int>(std::floor(v * (1.0 + 1e-14)));
    }
    p.a.back() = n;
    return p;
}

}  // namespace tperc
