#pragma once

// Independent reference implementations used only by the tests: direct
// long-double products, explicit Laguerre sums and closed forms.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using real = long double;

inline real factorial(std::size_t n)
{
    real f = 1.0L;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<real>(k);
    return f;
}

inline real binomial(std::size_t n, std::size_t k)
{
    real b = 1.0L;
    for (std::size_t j = 1; j <= k; ++j) b = b * static_cast<real>(n - k + j) / static_cast<real>(j);
    return b;
}

/// L_n^k(x) = sum_j (-1)^j C(n+k, n-j) x^j / j!.
inline real laguerre_sum(std::size_t n, unsigned k, real x)
{
    real acc = 0.0L;
    for (std::size_t j = 0; j <= n; ++j) {
        const real term = binomial(n + k, n - j) * std::pow(x, static_cast<real>(j)) / factorial(j);
        acc += (j % 2 ? -term : term);
    }
    return acc;
}

inline real harmonic(std::size_t n) { return static_cast<real>(n); }
inline real poschl_teller(std::size_t n, real nu) { return static_cast<real>(n) * (static_cast<real>(n) + nu); }
inline real hydrogen(std::size_t n)
{
    const real m = static_cast<real>(n + 1);
    return 1.0L - 1.0L / (m * m);
}
inline real trapped_ion(std::size_t n, real eta)
{
    if (n == 0) return 0.0L;
    const real x = eta * eta;
    const real f = laguerre_sum(n, 1, x) / (static_cast<real>(n + 1) * laguerre_sum(n, 0, x));
    return static_cast<real>(n) * f * f;
}

/// prod_{k=1}^{n} e(k).
inline real jackson(const std::function<real(std::size_t)>& e, std::size_t n)
{
    real p = 1.0L;
    for (std::size_t k = 1; k <= n; ++k) p *= e(k);
    return p;
}

/// Normalized class I coefficients sum_n e^{-i alpha e_2n} sqrt([e_2n]!)/n! (e^{i phi} tanh r / 2)^n
/// over n = 0..terms, by direct products.
inline std::vector<std::complex<double>> class_one(const std::function<real(std::size_t)>& e, double r,
                                                   double phi, double alpha, std::size_t terms)
{
    const real t = std::tanh(static_cast<real>(r)) / 2.0L;
    std::vector<real> mag(terms + 1);
    real norm = 0.0L;
    for (std::size_t n = 0; n <= terms; ++n) {
        mag[n] = std::sqrt(jackson(e, 2 * n)) / factorial(n) * std::pow(t, static_cast<real>(n));
        norm += mag[n] * mag[n];
    }
    std::vector<std::complex<double>> c(terms + 1);
    for (std::size_t n = 0; n <= terms; ++n) {
        const real ph = static_cast<real>(n) * phi - static_cast<real>(alpha) * e(2 * n);
        c[n] = std::polar(static_cast<double>(mag[n] / std::sqrt(norm)), static_cast<double>(ph));
    }
    return c;
}

/// Class I <a^2> written out term by term with e^{i alpha (e_2n - e_2n+2)}
/// phases and e^{i phi} from the extra squeeze power.
inline std::complex<double> class_one_a2(const std::function<real(std::size_t)>& e, double r, double phi,
                                         double alpha, std::size_t terms)
{
    const real t = std::tanh(static_cast<real>(r)) / 2.0L;
    real norm = 0.0L;
    for (std::size_t n = 0; n <= terms; ++n) {
        norm += jackson(e, 2 * n) / (factorial(n) * factorial(n)) * std::pow(t, 2.0L * static_cast<real>(n));
    }
    std::complex<real> acc{};
    for (std::size_t n = 0; n < terms; ++n) {
        const real nn = static_cast<real>(n);
        const real mag = std::sqrt((2 * nn + 1) * (2 * nn + 2) * jackson(e, 2 * n + 2) * jackson(e, 2 * n)) /
                         (factorial(n) * factorial(n + 1)) * std::pow(t, 2 * nn + 1);
        const real ph = static_cast<real>(alpha) * (e(2 * n) - e(2 * n + 2)) + static_cast<real>(phi);
        acc += std::polar(mag, ph);
    }
    acc /= norm;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace oracle
