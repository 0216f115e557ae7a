#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkss/errors.hpp"
#include "gkss/spectrum.hpp"

namespace gkss {

/// The four even-Fock expansions. I/II weight by the spectrum e_n, III/IV by
/// its dual eps_n; I/III carry sqrt([.]!) in the numerator, II/IV carry
/// (2n)! / sqrt([.]!).
enum class StateClass { I, II, III, IV };

inline std::string to_string(StateClass c)
{
    switch (c) {
    case StateClass::I: return "I";
    case StateClass::II: return "II";
    case StateClass::III: return "III";
    case StateClass::IV: return "IV";
    }
    return "?";
}

inline std::optional<StateClass> parse_state_class(std::string_view text)
{
    if (text.starts_with("Class")) {
        text.remove_prefix(5);
    }
    if (text == "I" || text == "1") return StateClass::I;
    if (text == "II" || text == "2") return StateClass::II;
    if (text == "III" || text == "3") return StateClass::III;
    if (text == "IV" || text == "4") return StateClass::IV;
    return std::nullopt;
}

inline bool uses_dual_spectrum(StateClass c) { return c == StateClass::III || c == StateClass::IV; }
inline bool factorial_in_numerator(StateClass c) { return c == StateClass::I || c == StateClass::III; }

inline constexpr StateClass all_state_classes[] = {StateClass::I, StateClass::II, StateClass::III, StateClass::IV};

/// Squeeze parameter xi = tanh(r) e^{i phi} plus the temporal-stability
/// parameter alpha (alpha = 0 gives the plain nonlinear squeezed states).
struct SqueezedParams {
    double r = 0.0;
    double phi = 0.0;
    double alpha = 0.0;

    void check() const
    {
        if (!std::isfinite(r) || r < 0.0) {
            throw ConfigError("squeeze magnitude r must be finite and non-negative");
        }
        if (!std::isfinite(phi) || !std::isfinite(alpha)) {
            throw ConfigError("phi and alpha must be finite");
        }
    }

    std::complex<double> xi() const { return std::polar(std::tanh(r), phi); }
};

/// Series cut-off rules. The truncation index N grows until the last
/// `tail_window` terms each weigh less than `tol` of the running
/// normalization sum and the neglected remainder does too; N never exceeds
/// `max_terms`. `force_terms` bypasses every check (divergent series
/// included) and marks the result as truncation-dependent.
struct TruncationPolicy {
    double tol = 1e-16;
    std::size_t tail_window = 5;
    std::size_t max_terms = 2000;
    std::size_t ratio_window = 50;
    double ratio_margin = 1e-3;
    std::optional<std::size_t> force_terms;
};

enum class Verdict { convergent, divergent, inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ConvergenceReport {
    Verdict verdict = Verdict::inconclusive;
    /// Geometric mean of |c_{n+1}/c_n|^2 over the examined window.
    double ratio_estimate = 0.0;
    std::size_t terms_examined = 0;
};

class DivergentSeries : public std::runtime_error {
public:
    DivergentSeries(const std::string& what, ConvergenceReport report)
        : std::runtime_error(what), report_(report)
    {
    }
    const ConvergenceReport& report() const { return report_; }

private:
    ConvergenceReport report_;
};

class InconclusiveSeries : public std::runtime_error {
public:
    InconclusiveSeries(const std::string& what, ConvergenceReport report)
        : std::runtime_error(what), report_(report)
    {
    }
    const ConvergenceReport& report() const { return report_; }

private:
    ConvergenceReport report_;
};

/// One expansion coefficient kept as (ln|c|, arg c); magnitudes of (2n)! and
/// [e_2n]! leave double range long before the series has converged.
struct Amplitude {
    double log_magnitude = 0.0;
    double phase = 0.0;

    std::complex<double> value() const { return std::polar(std::exp(log_magnitude), phase); }
    double probability() const { return std::exp(2.0 * log_magnitude); }
};

namespace detail {

inline double log_add(double a, double b)
{
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

inline double log_sum(std::span<const double> w)
{
    double acc = -std::numeric_limits<double>::infinity();
    for (double x : w) {
        acc = log_add(acc, x);
    }
    return acc;
}

/// Ratio test over the last `window` entries of `log_weights` (ln|c_n|^2).
inline ConvergenceReport ratio_test(std::span<const double> log_weights, std::size_t window, double margin)
{
    ConvergenceReport report;
    report.terms_examined = log_weights.size();
    if (log_weights.size() <= 1) {
        report.verdict = Verdict::convergent;
        return report;
    }
    const std::size_t last = log_weights.size() - 1;
    const std::size_t w = std::clamp<std::size_t>(window, 1, last);
    const double mean_log_ratio = (log_weights[last] - log_weights[last - w]) / static_cast<double>(w);
    report.ratio_estimate = std::exp(mean_log_ratio);
    if (mean_log_ratio <= std::log1p(-margin)) {
        report.verdict = Verdict::convergent;
    } else if (mean_log_ratio >= 0.0) {
        report.verdict = Verdict::divergent;
    } else {
        report.verdict = Verdict::inconclusive;
    }
    return report;
}

struct SeriesCut {
    std::size_t truncation = 0;
    double log_norm = 0.0;
    double tail_bound = 0.0;
    ConvergenceReport report;
    bool forced = false;
};

/// Applies a TruncationPolicy to ln|c~_n|^2, n = 0..H.
inline SeriesCut cut_series(std::span<const double> w, const TruncationPolicy& policy, const std::string& what)
{
    SeriesCut cut;
    cut.report = ratio_test(w, policy.ratio_window, policy.ratio_margin);

    const std::size_t h = w.size() - 1;
    std::vector<double> suffix(w.size() + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t n = w.size(); n-- > 0;) {
        suffix[n] = log_add(suffix[n + 1], w[n]);
    }

    if (policy.force_terms) {
        cut.forced = true;
        cut.truncation = std::min(*policy.force_terms, h);
        const double total = log_sum(w.first(cut.truncation + 1));
        cut.log_norm = -0.5 * total;
        cut.tail_bound = std::exp(suffix[cut.truncation + 1] - total);
        return cut;
    }

    if (cut.report.verdict == Verdict::divergent) {
        std::ostringstream msg;
        msg << what << ": series diverges (term ratio ~ " << cut.report.ratio_estimate << " after "
            << cut.report.terms_examined << " terms); no normalization constant exists";
        throw DivergentSeries(msg.str(), cut.report);
    }
    if (cut.report.verdict == Verdict::inconclusive) {
        std::ostringstream msg;
        msg << what << ": ratio test inconclusive (term ratio ~ " << cut.report.ratio_estimate << " after "
            << cut.report.terms_examined << " terms)";
        throw InconclusiveSeries(msg.str(), cut.report);
    }

    const double rho = cut.report.ratio_estimate;
    const double beyond = rho > 0.0 ? w[h] + std::log(rho / (1.0 - rho)) : -std::numeric_limits<double>::infinity();
    const double log_tol = std::log(policy.tol);
    const std::size_t window = std::max<std::size_t>(policy.tail_window, 1);

    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n <= h; ++n) {
        running = log_add(running, w[n]);
        if (n < window) {
            continue;
        }
        const double limit = running + log_tol;
        bool quiet = true;
        for (std::size_t k = n + 1 - window; k <= n; ++k) {
            if (w[k] >= limit) {
                quiet = false;
                break;
            }
        }
        if (!quiet) {
            continue;
        }
        const double rest = log_add(suffix[n + 1], beyond);
        if (rest >= limit) {
            continue;
        }
        cut.truncation = n;
        cut.log_norm = -0.5 * running;
        cut.tail_bound = std::exp(rest - running);
        return cut;
    }
    std::ostringstream msg;
    msg << what << ": tolerance " << policy.tol << " not reached within " << policy.max_terms << " terms";
    throw InconclusiveSeries(msg.str(), cut.report);
}

/// ln|c~_n| of one class term before normalization, given ln [eps_2n]! and
/// ln(tanh r / 2).
inline double class_log_weight(StateClass c, double log_jackson_2n, std::size_t n, double log_half_tanh)
{
    const double nn = static_cast<double>(n);
    const double power = n == 0 ? 0.0 : nn * log_half_tanh;
    if (factorial_in_numerator(c)) {
        return 0.5 * log_jackson_2n - std::lgamma(nn + 1.0) + power;
    }
    return std::lgamma(2.0 * nn + 1.0) - std::lgamma(nn + 1.0) - 0.5 * log_jackson_2n + power;
}

inline std::size_t squeezed_horizon(const Spectrum& s, std::size_t wanted)
{
    if (auto limit = s.size_limit()) {
        const std::size_t available = (*limit - 1) / 2;
        return std::min(wanted, available);
    }
    return wanted;
}

/// ln|c~_n|^2 for n = 0..horizon.
inline std::vector<double> squeezed_log_weights(StateClass c, const Spectrum& view, double r, std::size_t horizon)
{
    const std::vector<double> jack = view.jackson_factorial_logs(2 * horizon + 1);
    const double lt = std::log(std::tanh(r) / 2.0);
    std::vector<double> w(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        w[n] = 2.0 * class_log_weight(c, jack[2 * n], n, lt);
    }
    return w;
}

inline void require_zero_ground(const Spectrum& view)
{
    const double e0 = view.raw_eigenvalues(1)[0];
    if (e0 != 0.0) {
        std::ostringstream msg;
        msg << view.name() << ": ground-state energy must be 0, got " << e0;
        throw InvalidSpectrum(msg.str());
    }
}

} // namespace detail

/// A normalized squeezed state sum_n c_n |2n>, n = 0..N.
class SqueezedState {
public:
    StateClass state_class() const { return class_; }
    const Spectrum& spectrum() const { return spectrum_; }
    const SqueezedParams& params() const { return params_; }

    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    /// eps_2n (e_2n for I/II, the dual sequence for III/IV) per stored term.
    std::span<const double> level_energies() const { return energies_; }

    std::size_t truncation() const { return amplitudes_.size() - 1; }
    std::complex<double> coefficient(std::size_t n) const { return amplitudes_.at(n).value(); }

    std::vector<std::complex<double>> coefficients() const
    {
        std::vector<std::complex<double>> out;
        out.reserve(amplitudes_.size());
        for (const auto& a : amplitudes_) {
            out.push_back(a.value());
        }
        return out;
    }

    /// Amplitudes on every Fock level 0..2N (odd levels zero).
    std::vector<std::complex<double>> fock_vector() const
    {
        std::vector<std::complex<double>> out(2 * amplitudes_.size() - 1);
        for (std::size_t n = 0; n < amplitudes_.size(); ++n) {
            out[2 * n] = amplitudes_[n].value();
        }
        return out;
    }

    /// ln of the normalization constant multiplying the raw class series.
    double log_norm() const { return log_norm_; }
    double applied_norm() const { return std::exp(log_norm_); }
    /// Relative weight of the series beyond N.
    double tail_bound() const { return tail_bound_; }
    const ConvergenceReport& convergence() const { return convergence_; }
    bool forced_truncation() const { return forced_; }

private:
    friend SqueezedState build_squeezed(StateClass, const Spectrum&, const SqueezedParams&, const TruncationPolicy&);
    friend SqueezedState evolve(const SqueezedState&, double);

    SqueezedState(StateClass c, Spectrum s, SqueezedParams p) : class_(c), spectrum_(std::move(s)), params_(p) {}

    StateClass class_;
    Spectrum spectrum_;
    SqueezedParams params_;
    std::vector<Amplitude> amplitudes_;
    std::vector<double> energies_;
    double log_norm_ = 0.0;
    double tail_bound_ = 0.0;
    ConvergenceReport convergence_;
    bool forced_ = false;
};

/// Builds a normalized state of the given class. Throws DivergentSeries when
/// the normalization sum has no finite value, InconclusiveSeries when the
/// policy cannot certify a cut-off, SpectrumError for unusable spectra.
inline SqueezedState build_squeezed(StateClass c, const Spectrum& s, const SqueezedParams& p,
                                    const TruncationPolicy& policy = {})
{
    p.check();
    const Spectrum view = uses_dual_spectrum(c) ? s.dual() : s;
    detail::require_zero_ground(view);

    SqueezedState st(c, s, p);
    if (p.r == 0.0) {
        st.amplitudes_ = {Amplitude{0.0, 0.0}};
        st.energies_ = {0.0};
        st.convergence_ = {Verdict::convergent, 0.0, 1};
        st.forced_ = policy.force_terms.has_value();
        return st;
    }

    std::size_t horizon = policy.max_terms;
    if (policy.force_terms) {
        horizon = std::max(horizon, *policy.force_terms);
    }
    horizon = detail::squeezed_horizon(view, horizon);
    const std::vector<double> w = detail::squeezed_log_weights(c, view, p.r, horizon);
    const std::string what = "class " + to_string(c) + " state on " + s.name();
    const detail::SeriesCut cut = detail::cut_series(w, policy, what);

    const std::vector<double> e = view.raw_eigenvalues(2 * cut.truncation + 1);
    st.amplitudes_.resize(cut.truncation + 1);
    st.energies_.resize(cut.truncation + 1);
    for (std::size_t n = 0; n <= cut.truncation; ++n) {
        const double energy = e[2 * n];
        st.energies_[n] = energy;
        st.amplitudes_[n] = Amplitude{0.5 * w[n] + cut.log_norm,
                                      -p.alpha * energy + static_cast<double>(n) * p.phi};
    }
    st.log_norm_ = cut.log_norm;
    st.tail_bound_ = cut.tail_bound;
    st.convergence_ = cut.report;
    st.forced_ = cut.forced;
    return st;
}

/// Time evolution under the class's own Hamiltonian (e_n for I/II, eps_n for
/// III/IV): c_n -> c_n e^{+i eps_2n t}, i.e. the same state with
/// alpha -> alpha - t.
inline SqueezedState evolve(const SqueezedState& st, double t)
{
    SqueezedState out = st;
    for (std::size_t n = 0; n < out.amplitudes_.size(); ++n) {
        out.amplitudes_[n].phase += out.energies_[n] * t;
    }
    out.params_.alpha -= t;
    return out;
}

/// Ratio test for a class series at squeeze magnitude r over `horizon` terms,
/// examining the last `window` term ratios.
inline ConvergenceReport convergence_check(StateClass c, const Spectrum& s, double r, std::size_t window,
                                           std::size_t horizon = TruncationPolicy{}.max_terms,
                                           double margin = TruncationPolicy{}.ratio_margin)
{
    if (r == 0.0) {
        return {Verdict::convergent, 0.0, 1};
    }
    const Spectrum view = uses_dual_spectrum(c) ? s.dual() : s;
    const std::vector<double> w = detail::squeezed_log_weights(c, view, r, detail::squeezed_horizon(view, horizon));
    return detail::ratio_test(w, window, margin);
}

// ---------------------------------------------------------------------------
// Gazeau-Klauder coherent states

struct CoherentState {
    Spectrum spectrum;
    std::complex<double> z;
    double alpha = 0.0;
    std::vector<Amplitude> amplitudes; ///< on every Fock level 0..N
    double log_norm = 0.0;
    double tail_bound = 0.0;
    ConvergenceReport convergence;
    bool forced = false;

    std::size_t truncation() const { return amplitudes.size() - 1; }

    std::vector<std::complex<double>> coefficients() const
    {
        std::vector<std::complex<double>> out;
        out.reserve(amplitudes.size());
        for (const auto& a : amplitudes) {
            out.push_back(a.value());
        }
        return out;
    }
};

/// |z, alpha> ∝ sum_n z^n e^{-i alpha e_n} / sqrt([e_n]!) |n>.
inline CoherentState gk_coherent(const Spectrum& s, std::complex<double> z, double alpha,
                                 const TruncationPolicy& policy = {})
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(alpha)) {
        throw ConfigError("coherent-state parameters must be finite");
    }
    detail::require_zero_ground(s);
    CoherentState st{s, z, alpha, {}, 0.0, 0.0, {}, policy.force_terms.has_value()};
    if (z == std::complex<double>{}) {
        st.amplitudes = {Amplitude{0.0, 0.0}};
        st.convergence = {Verdict::convergent, 0.0, 1};
        return st;
    }
    std::size_t horizon = policy.max_terms;
    if (policy.force_terms) {
        horizon = std::max(horizon, *policy.force_terms);
    }
    if (auto limit = s.size_limit()) {
        horizon = std::min(horizon, *limit - 1);
    }
    const std::vector<double> jack = s.jackson_factorial_logs(horizon + 1);
    const double lz = std::log(std::abs(z));
    std::vector<double> w(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        w[n] = 2.0 * (n == 0 ? 0.0 : static_cast<double>(n) * lz) - jack[n];
    }
    const detail::SeriesCut cut = detail::cut_series(w, policy, "coherent state on " + s.name());
    const std::vector<double> e = s.raw_eigenvalues(cut.truncation + 1);
    const double arg = std::arg(z);
    st.amplitudes.resize(cut.truncation + 1);
    for (std::size_t n = 0; n <= cut.truncation; ++n) {
        st.amplitudes[n] = Amplitude{0.5 * w[n] + cut.log_norm, static_cast<double>(n) * arg - alpha * e[n]};
    }
    st.log_norm = cut.log_norm;
    st.tail_bound = cut.tail_bound;
    st.convergence = cut.report;
    st.forced = cut.forced;
    return st;
}

/// Dual family: mu(n) = (n!)^2 / [e_n]! = [eps_n]! and phases e^{-i alpha eps_n}.
inline CoherentState gk_coherent_dual(const Spectrum& s, std::complex<double> z, double alpha,
                                      const TruncationPolicy& policy = {})
{
    return gk_coherent(s.dual(), z, alpha, policy);
}

enum class Sign { plus, minus };

/// e^{∓ i alpha e_n} sqrt([e_n]! / n!), the generalized factorial of the
/// Gazeau-Klauder nonlinearity. Pass s.dual() for the eps analogue.
inline std::complex<double> nonlinearity_factorial(const Spectrum& s, Sign sign, double alpha, std::size_t n)
{
    const double log_mag = 0.5 * (s.jackson_factorial_log(n) - std::lgamma(static_cast<double>(n) + 1.0));
    const double energy = n == 0 ? s.raw_eigenvalues(1)[0] : s.eigenvalue(n);
    const double phase = (sign == Sign::plus ? -1.0 : 1.0) * alpha * energy;
    return std::polar(std::exp(log_mag), phase);
}

} // namespace gkss
