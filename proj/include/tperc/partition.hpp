// Geometric window partition of the segment [1, n].
#pragma once

#include <vector>

namespace tperc {

struct ScalePartition {
    int n = 0;
    double eps = 0.0;
    int M = 0;
    std::vector<int> a;  // a[j-1] = a(j) for j = 1..M+1; a.back() == n

    // Window i (1-based) is (a(i), a(i+1)].
    [[nodiscard]] int lower(int i) const { return a[static_cast<std::size_t>(i - 1)]; }
    [[nodiscard]] int upper(int i) const { return a[static_cast<std::size_t>(i)]; }
    [[nodiscard]] bool degenerate(int i) const { return lower(i) == upper(i); }
};

// M = floor((log n - log(log n)/2) / log(1+eps)), a(j) = floor(n / (1+eps)^(M-j+1)).
// Throws ArgumentError for n < 3 or eps <= 0.
ScalePartition make_partition(int n, double eps);

}  // namespace tperc
