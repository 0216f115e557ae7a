#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "gkss/states.hpp"

namespace gkss {

// Moments are generic sums over |c_n|^2 and conj(c_n) c_{n+1}; every class
// and spectrum goes through the same path.

struct NumberMoments {
    double mean = 0.0;        ///< <n>
    double mean_square = 0.0; ///< <n^2>

    double variance() const { return mean_square - mean * mean; }
};

struct QuadratureVariances {
    double var_x = 0.5;
    double var_p = 0.5;

    /// Squeezing needs a variance strictly below the vacuum value 1/2.
    bool x_squeezed() const { return var_x < 0.5; }
    bool p_squeezed() const { return var_p < 0.5; }
};

/// P(m) for m = 0..2N; odd levels are identically zero.
inline std::vector<double> photon_distribution(const SqueezedState& st)
{
    const auto amps = st.amplitudes();
    std::vector<double> p(2 * amps.size() - 1, 0.0);
    for (std::size_t n = 0; n < amps.size(); ++n) {
        p[2 * n] = amps[n].probability();
    }
    return p;
}

inline NumberMoments number_moments(const SqueezedState& st)
{
    NumberMoments m;
    const auto amps = st.amplitudes();
    for (std::size_t n = 0; n < amps.size(); ++n) {
        const double level = 2.0 * static_cast<double>(n);
        const double prob = amps[n].probability();
        m.mean += level * prob;
        m.mean_square += level * level * prob;
    }
    return m;
}

/// <a^2> = sum_n conj(c_n) c_{n+1} sqrt((2n+1)(2n+2)); <a†^2> is its conjugate.
inline std::complex<double> a_squared_expectation(const SqueezedState& st)
{
    const auto amps = st.amplitudes();
    std::complex<double> acc{};
    for (std::size_t n = 0; n + 1 < amps.size(); ++n) {
        const double nn = static_cast<double>(n);
        const double mag = std::exp(amps[n].log_magnitude + amps[n + 1].log_magnitude) *
                           std::sqrt((2.0 * nn + 1.0) * (2.0 * nn + 2.0));
        acc += std::polar(mag, amps[n + 1].phase - amps[n].phase);
    }
    return acc;
}

/// Q = (<n^2> - <n>^2) / <n> - 1; empty for the vacuum.
inline std::optional<double> mandel_q(const NumberMoments& m)
{
    if (m.mean == 0.0) {
        return std::nullopt;
    }
    return m.variance() / m.mean - 1.0;
}

inline std::optional<double> mandel_q(const SqueezedState& st) { return mandel_q(number_moments(st)); }

/// Var x = <n> + Re<a^2> + 1/2 and Var p = <n> - Re<a^2> + 1/2 with
/// x = (a + a†)/sqrt2, p = (a - a†)/(i sqrt2); <a> = 0 on even-Fock states.
inline QuadratureVariances quadrature_variances(double mean_n, std::complex<double> a2)
{
    return {mean_n + a2.real() + 0.5, mean_n - a2.real() + 0.5};
}

inline QuadratureVariances quadrature_variances(const SqueezedState& st)
{
    return quadrature_variances(number_moments(st).mean, a_squared_expectation(st));
}

struct StatisticsReport {
    std::vector<double> distribution;
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    std::complex<double> a2{};
    std::optional<double> mandel_q;
    double var_x = 0.5;
    double var_p = 0.5;
    /// Rough bound on the <n^2> error from the neglected tail: tail weight
    /// times the squared level just past the cut-off.
    double moment_error = 0.0;
};

inline StatisticsReport statistics(const SqueezedState& st)
{
    StatisticsReport rep;
    rep.distribution = photon_distribution(st);
    const NumberMoments m = number_moments(st);
    rep.mean_n = m.mean;
    rep.mean_n2 = m.mean_square;
    rep.a2 = a_squared_expectation(st);
    rep.mandel_q = mandel_q(m);
    const QuadratureVariances v = quadrature_variances(m.mean, rep.a2);
    rep.var_x = v.var_x;
    rep.var_p = v.var_p;
    const double next_level = 2.0 * static_cast<double>(st.truncation() + 1);
    rep.moment_error = st.tail_bound() * next_level * next_level;
    return rep;
}

} // namespace gkss
