#pragma once

#include <cstddef>
#include <vector>

namespace gkss {

/// Values L_0^k(x), ..., L_{n_max}^k(x) of the associated Laguerre
/// polynomials from the three-term recurrence
///   (n+1) L_{n+1}^k = (2n+1+k-x) L_n^k - (n+k) L_{n-1}^k.
inline std::vector<double> laguerre_table(std::size_t n_max, unsigned k, double x)
{
    std::vector<double> out(n_max + 1);
    out[0] = 1.0;
    if (n_max == 0) {
        return out;
    }
    const double kk = static_cast<double>(k);
    out[1] = 1.0 + kk - x;
    for (std::size_t n = 1; n < n_max; ++n) {
        const double nn = static_cast<double>(n);
        out[n + 1] = ((2.0 * nn + 1.0 + kk - x) * out[n] - (nn + kk) * out[n - 1]) / (nn + 1.0);
    }
    return out;
}

/// Associated Laguerre polynomial L_n^k(x).
inline double laguerre(std::size_t n, unsigned k, double x)
{
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    const double kk = static_cast<double>(k);
    double cur = 1.0 + kk - x;
    for (std::size_t m = 1; m < n; ++m) {
        const double mm = static_cast<double>(m);
        const double next = ((2.0 * mm + 1.0 + kk - x) * cur - (mm + kk) * prev) / (mm + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace gkss
