#pragma once

// Regression checks on published claims. Each criterion builds states through the
// public API and compares against closed forms or independently transcribed
// sums; thresholds are fixed here.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gkss/stats.hpp"

namespace gkss::acceptance {

inline constexpr double self_duality_tol = 1e-12;
inline constexpr double closed_norm_tol = 1e-10;
inline constexpr double squeezed_vacuum_tol = 1e-8;
inline constexpr double alpha_window_tol = 0.01;
inline constexpr double r_threshold_tol = 0.01;
inline constexpr double normalization_tol = 1e-10;
inline constexpr double temporal_tol = 1e-12;
inline constexpr double trapped_boundary_tol = 0.05;
inline constexpr double eta_zero_tol = 1e-10;
inline constexpr double literal_a2_tol = 1e-12;
/// Truncation used wherever a criterion needs a state whose series diverges.
inline constexpr std::size_t forced_terms = 20;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    std::vector<std::string> notes;
};

namespace detail {

inline std::string fmt(double v, int prec = 6)
{
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

inline std::vector<double> grid(double a, double b, double step)
{
    std::vector<double> xs;
    const auto n = static_cast<std::size_t>(std::llround((b - a) / step));
    for (std::size_t i = 0; i <= n; ++i) {
        xs.push_back(a + static_cast<double>(i) * step);
    }
    return xs;
}

inline double max_coefficient_gap(const SqueezedState& a, const SqueezedState& b)
{
    const auto ca = a.coefficients();
    const auto cb = b.coefficients();
    double gap = 0.0;
    for (std::size_t n = 0; n < std::max(ca.size(), cb.size()); ++n) {
        const std::complex<double> x = n < ca.size() ? ca[n] : std::complex<double>{};
        const std::complex<double> y = n < cb.size() ? cb[n] : std::complex<double>{};
        gap = std::max(gap, std::abs(x - y));
    }
    return gap;
}

inline SqueezedState build(StateClass c, const Spectrum& s, double r, double alpha, double phi = 0.0)
{
    return build_squeezed(c, s, SqueezedParams{r, phi, alpha});
}

inline SqueezedState build_forced(StateClass c, const Spectrum& s, double r, double alpha, double phi = 0.0)
{
    TruncationPolicy policy;
    policy.force_terms = forced_terms;
    return build_squeezed(c, s, SqueezedParams{r, phi, alpha}, policy);
}

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12)
{
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Every sign change of f on the grid, refined by bisection.
inline std::vector<double> crossings(const std::function<double(double)>& f, const std::vector<double>& xs)
{
    std::vector<double> roots;
    double prev = f(xs.front());
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cur = f(xs[i]);
        if ((cur < 0.0) != (prev < 0.0)) {
            roots.push_back(bisect(f, xs[i - 1], xs[i]));
        }
        prev = cur;
    }
    return roots;
}

inline std::string list(const std::vector<double>& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + fmt(xs[i], 5);
    }
    return out + "}";
}

/// Mandel Q of a class build, or a description of why none exists.
struct QProbe {
    std::optional<double> q;
    std::string failure;
};

inline QProbe probe_q(StateClass c, const Spectrum& s, double r, double alpha = 0.0)
{
    try {
        return {mandel_q(build(c, s, r, alpha)), {}};
    } catch (const DivergentSeries&) {
        return {std::nullopt, "divergent"};
    } catch (const InconclusiveSeries&) {
        return {std::nullopt, "inconclusive"};
    }
}

inline std::string forced_q_note(StateClass c, const Spectrum& s, double r)
{
    const auto q = mandel_q(build_forced(c, s, r, 0.0));
    return "class " + to_string(c) + " " + s.name() + " r=" + fmt(r) + " diverges; with forced N=" +
           std::to_string(forced_terms) + " Q would read " + fmt(q.value_or(NAN)) + " (truncation artefact)";
}

/// <a^2> for class I transcribed term by term from the explicit e_2n sum:
///   N^2 sum_n e^{i alpha (e_2n - e_2n+2)} sqrt((2n+1)(2n+2)[e_2n+2]![e_2n]!) /
///         (n! (n+1)!) (tanh r / 2)^{2n+1},
/// with phi = 0, direct long-double products and the normalization summed
/// over the same N terms as the state.
inline std::complex<double> literal_class_one_a2(const std::function<long double(int)>& energy, double r,
                                                 double alpha, std::size_t terms)
{
    const long double t = std::tanh(static_cast<long double>(r)) / 2.0L;
    std::vector<long double> jack(2 * terms + 3, 1.0L);
    for (std::size_t k = 1; k < jack.size(); ++k) {
        jack[k] = jack[k - 1] * energy(static_cast<int>(k));
    }
    auto fact = [](std::size_t n) {
        long double f = 1.0L;
        for (std::size_t k = 2; k <= n; ++k) f *= static_cast<long double>(k);
        return f;
    };
    long double norm_sum = 0.0L;
    for (std::size_t n = 0; n <= terms; ++n) {
        norm_sum += jack[2 * n] / (fact(n) * fact(n)) * std::pow(t, 2.0L * static_cast<long double>(n));
    }
    std::complex<long double> acc{};
    for (std::size_t n = 0; n < terms; ++n) {
        const long double nn = static_cast<long double>(n);
        const long double mag = std::sqrt((2 * nn + 1) * (2 * nn + 2) * jack[2 * n + 2] * jack[2 * n]) /
                                (fact(n) * fact(n + 1)) * std::pow(t, 2 * nn + 1);
        const long double ph =
            static_cast<long double>(alpha) * (energy(static_cast<int>(2 * n)) - energy(static_cast<int>(2 * n + 2)));
        acc += std::polar(mag, ph);
    }
    acc /= norm_sum;
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace detail

inline CriterionResult criterion_1()
{
    CriterionResult res{1, "self-duality of the harmonic oscillator", true, {}, {}};
    const Spectrum ho = Spectrum::harmonic();
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        for (double alpha : {0.0, 1.5}) {
            const SqueezedState ref = detail::build(StateClass::I, ho, r, alpha);
            for (StateClass c : {StateClass::II, StateClass::III, StateClass::IV}) {
                worst = std::max(worst, detail::max_coefficient_gap(ref, detail::build(c, ho, r, alpha)));
            }
        }
    }
    res.passed = worst <= self_duality_tol;
    res.detail = "max coefficient gap " + detail::fmt(worst, 3) + " (tol " + detail::fmt(self_duality_tol) + ")";
    return res;
}

inline CriterionResult criterion_2()
{
    CriterionResult res{2, "closed-form normalization (cosh r)^(-1/2)", true, {}, {}};
    const Spectrum ho = Spectrum::harmonic();
    double worst = 0.0;
    for (double r : detail::grid(0.1, 2.5, 0.1)) {
        const double n = detail::build(StateClass::I, ho, r, 0.0).applied_norm();
        worst = std::max(worst, std::abs(n - std::pow(std::cosh(r), -0.5)));
    }
    res.passed = worst <= closed_norm_tol;
    res.detail = "max |N - (cosh r)^-1/2| over r in [0.1, 2.5]: " + detail::fmt(worst, 3);
    return res;
}

inline CriterionResult criterion_3()
{
    CriterionResult res{3, "squeezed-vacuum oracle: Q = cosh 2r, Var p = e^(-2r)/2", true, {}, {}};
    const Spectrum ho = Spectrum::harmonic();
    double worst_q = 0.0, worst_p = 0.0;
    bool positive = true;
    for (double r : detail::grid(0.1, 2.0, 0.1)) {
        const SqueezedState st = detail::build(StateClass::I, ho, r, 0.0);
        const double q = mandel_q(st).value_or(NAN);
        const double vp = quadrature_variances(st).var_p;
        worst_q = std::max(worst_q, std::abs(q - std::cosh(2.0 * r)));
        worst_p = std::max(worst_p, std::abs(vp - std::exp(-2.0 * r) / 2.0));
        positive = positive && q > 0.0;
    }
    res.passed = worst_q <= squeezed_vacuum_tol && worst_p <= squeezed_vacuum_tol && positive;
    res.detail = "max |Q - cosh 2r| " + detail::fmt(worst_q, 3) + ", max |Var p - e^-2r/2| " +
                 detail::fmt(worst_p, 3) + ", Q > 0 everywhere: " + (positive ? "yes" : "no");
    return res;
}

inline CriterionResult criterion_4()
{
    CriterionResult res{4, "harmonic r=1 quadrature windows in alpha", true, {}, {}};
    const Spectrum ho = Spectrum::harmonic();
    auto var = [&](double alpha) { return quadrature_variances(detail::build(StateClass::I, ho, 1.0, alpha)); };
    const std::vector<double> xs = detail::grid(0.0, 3.6, 0.01);
    const auto x_roots = detail::crossings([&](double a) { return var(a).var_x - 0.5; }, xs);
    const auto p_roots = detail::crossings([&](double a) { return var(a).var_p - 0.5; }, xs);

    // Var x < 1/2  <=>  cos 2a < -tanh 1 ;  Var p < 1/2  <=>  cos 2a > tanh 1.
    const double th = std::tanh(1.0);
    const double pi = std::numbers::pi;
    const std::vector<double> x_expected{std::acos(-th) / 2.0, pi - std::acos(-th) / 2.0};
    const std::vector<double> p_expected{std::acos(th) / 2.0, pi - std::acos(th) / 2.0, pi + std::acos(th) / 2.0};

    auto match = [](const std::vector<double>& got, const std::vector<double>& want) {
        if (got.size() != want.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i) {
            if (std::abs(got[i] - want[i]) > alpha_window_tol) return false;
        }
        return true;
    };
    const bool p_starts_squeezed = var(0.0).p_squeezed();
    res.passed = match(x_roots, x_expected) && match(p_roots, p_expected) && p_starts_squeezed;
    res.detail = "x window " + detail::list(x_roots) + " vs " + detail::list(x_expected) + "; p boundaries " +
                 detail::list(p_roots) + " vs " + detail::list(p_expected);
    res.notes.push_back("published rounding: x in [1.22, 1.92], p in [0, 0.35] and [2.8, 3.49]");
    return res;
}

inline CriterionResult criterion_5()
{
    CriterionResult res{5, "harmonic alpha=1.5 x-squeezing threshold in r", true, {}, {}};
    const Spectrum ho = Spectrum::harmonic();
    auto gap = [&](double r) { return quadrature_variances(detail::build(StateClass::I, ho, r, 1.5)).var_x - 0.5; };
    const double expected = std::atanh(-std::cos(3.0));
    const double found = detail::bisect(gap, 2.5, 2.7, 1e-10);
    bool below = true;
    for (double r : detail::grid(0.1, 2.6, 0.1)) {
        below = below && gap(r) < 0.0;
    }
    res.passed = std::abs(found - expected) <= r_threshold_tol && below;
    res.detail = "r* = " + detail::fmt(found, 6) + " vs atanh(-cos 3) = " + detail::fmt(expected, 6) +
                 "; x-squeezed on r in [0.1, 2.6]: " + (below ? "yes" : "no");
    return res;
}

inline std::vector<Spectrum> builtin_spectra()
{
    return {Spectrum::harmonic(), Spectrum::poschl_teller(5.0), Spectrum::square_well(), Spectrum::hydrogen(),
            Spectrum::trapped_ion(0.5)};
}

inline CriterionResult criterion_6()
{
    CriterionResult res{6, "parity and normalization of P(n)", true, {}, {}};
    double worst = 0.0;
    int checked = 0;
    std::vector<std::string> skipped;
    for (const Spectrum& s : builtin_spectra()) {
        for (StateClass c : all_state_classes) {
            for (double r : {0.5, 1.0, 2.0}) {
                std::vector<double> p;
                try {
                    p = photon_distribution(detail::build(c, s, r, 0.3));
                } catch (const DivergentSeries&) {
                    skipped.push_back(s.name() + "/" + to_string(c) + "/r=" + detail::fmt(r));
                    continue;
                } catch (const InconclusiveSeries&) {
                    res.passed = false;
                    res.notes.push_back("inconclusive: " + s.name() + "/" + to_string(c) + "/r=" + detail::fmt(r));
                    continue;
                }
                ++checked;
                double sum = 0.0;
                for (std::size_t m = 0; m < p.size(); ++m) {
                    sum += p[m];
                    if ((m % 2 == 1 && p[m] != 0.0) || p[m] < 0.0) {
                        res.passed = false;
                    }
                }
                worst = std::max(worst, std::abs(sum - 1.0));
            }
        }
    }
    res.passed = res.passed && worst <= normalization_tol && checked > 0;
    res.detail = std::to_string(checked) + " convergent builds, max |sum P - 1| " + detail::fmt(worst, 3) +
                 ", odd levels exactly 0";
    res.notes.push_back(std::to_string(skipped.size()) + " divergent builds skipped");
    return res;
}

inline CriterionResult criterion_7()
{
    CriterionResult res{7, "temporal stability: evolve(t) == rebuild at alpha - t", true, {}, {}};
    const double r = 1.0, alpha = 0.5, phi = 0.3;
    double worst = 0.0;
    for (const Spectrum& s : {Spectrum::harmonic(), Spectrum::poschl_teller(5.0)}) {
        for (StateClass c : all_state_classes) {
            bool forced = false;
            auto make = [&](double a) {
                try {
                    return detail::build(c, s, r, a, phi);
                } catch (const DivergentSeries&) {
                    forced = true;
                    return detail::build_forced(c, s, r, a, phi);
                }
            };
            const SqueezedState st = make(alpha);
            if (forced) {
                res.notes.push_back(s.name() + " class " + to_string(c) + " diverges; compared at forced N=" +
                                    std::to_string(forced_terms));
            }
            for (double t : {0.3, 1.7}) {
                const SqueezedState rebuilt = forced ? detail::build_forced(c, s, r, alpha - t, phi)
                                                     : detail::build(c, s, r, alpha - t, phi);
                worst = std::max(worst, detail::max_coefficient_gap(evolve(st, t), rebuilt));
            }
        }
    }
    res.passed = worst <= temporal_tol;
    res.detail = "max coefficient gap " + detail::fmt(worst, 3) + " (tol " + detail::fmt(temporal_tol) + ")";
    return res;
}

inline CriterionResult criterion_8()
{
    CriterionResult res{8, "Mandel sign table (Poschl-Teller, square well, hydrogen)", true, {}, {}};
    std::vector<std::string> failures;
    auto expect = [&](const Spectrum& s, StateClass c, double r, bool want_negative) {
        const detail::QProbe q = detail::probe_q(c, s, r);
        const std::string tag = s.name() + "/" + to_string(c) + "/r=" + detail::fmt(r);
        if (!q.q) {
            failures.push_back(tag + ": " + q.failure);
            if (q.failure == "divergent") {
                res.notes.push_back(detail::forced_q_note(c, s, r));
            }
            return;
        }
        if ((*q.q < 0.0) != want_negative) {
            failures.push_back(tag + ": Q = " + detail::fmt(*q.q));
        }
    };
    for (const Spectrum& s : {Spectrum::poschl_teller(5.0), Spectrum::square_well()}) {
        for (double r : {0.5, 1.0, 2.0}) {
            expect(s, StateClass::I, r, true);
            expect(s, StateClass::II, r, false);
            expect(s, StateClass::III, r, false);
            expect(s, StateClass::IV, r, true);
        }
    }
    const Spectrum h = Spectrum::hydrogen();
    expect(h, StateClass::I, 1.0, false);
    expect(h, StateClass::III, 1.0, true);

    // Reported only.
    for (StateClass c : {StateClass::II, StateClass::IV}) {
        const detail::QProbe q = detail::probe_q(c, h, 1.0);
        if (q.q) {
            res.notes.push_back("hydrogen class " + to_string(c) + " r=1 converges, Q = " + detail::fmt(*q.q));
        } else {
            res.notes.push_back(detail::forced_q_note(c, h, 1.0));
        }
    }
    res.passed = failures.empty();
    res.detail = failures.empty() ? "all signs as stated" : std::to_string(failures.size()) + " mismatches";
    for (const auto& f : failures) {
        res.notes.push_back("mismatch " + f);
    }
    return res;
}

namespace detail {

/// True when Q has the wanted sign at every r; failures appended to `why`.
inline bool q_sign_on(StateClass c, const Spectrum& s, const std::vector<double>& rs, bool want_negative,
                      std::vector<std::string>& why)
{
    bool ok = true;
    for (double r : rs) {
        const QProbe q = probe_q(c, s, r);
        if (!q.q) {
            why.push_back("r=" + fmt(r) + " " + q.failure);
            ok = false;
        } else if ((*q.q < 0.0) != want_negative) {
            why.push_back("r=" + fmt(r) + " Q=" + fmt(*q.q));
            ok = false;
        }
    }
    return ok;
}

/// First r on the grid where x-squeezing ends, refined by bisection.
struct Boundary {
    std::optional<double> r;
    std::string failure;
};

inline Boundary x_squeezing_end(StateClass c, const Spectrum& s, double alpha, const std::vector<double>& rs)
{
    auto gap = [&](double r) { return quadrature_variances(build(c, s, r, alpha)).var_x - 0.5; };
    try {
        double prev_r = rs.front();
        if (gap(prev_r) >= 0.0) {
            return {std::nullopt, "not x-squeezed at r=" + fmt(prev_r)};
        }
        for (std::size_t i = 1; i < rs.size(); ++i) {
            if (gap(rs[i]) >= 0.0) {
                return {bisect(gap, prev_r, rs[i], 1e-6), {}};
            }
            prev_r = rs[i];
        }
        return {std::nullopt, "x-squeezed over the whole grid up to r=" + fmt(rs.back())};
    } catch (const DivergentSeries& e) {
        return {std::nullopt, std::string("divergent: ") + e.what()};
    } catch (const InconclusiveSeries& e) {
        return {std::nullopt, std::string("inconclusive: ") + e.what()};
    }
}

} // namespace detail

inline CriterionResult criterion_9()
{
    CriterionResult res{9, "trapped-ion statistics and squeezing", true, {}, {}};
    int failed = 0;
    auto sub = [&](const std::string& name, bool ok, const std::vector<std::string>& why) {
        std::string line = std::string(ok ? "ok   " : "FAIL ") + name;
        for (std::size_t i = 0; i < why.size() && i < 4; ++i) {
            line += (i ? "; " : ": ") + why[i];
        }
        if (why.size() > 4) {
            line += "; ... (" + std::to_string(why.size()) + " points)";
        }
        res.notes.push_back(line);
        failed += ok ? 0 : 1;
    };
    {
        std::vector<std::string> why;
        const bool ok =
            detail::q_sign_on(StateClass::I, Spectrum::trapped_ion(0.5), detail::grid(0.2, 2.0, 0.1), true, why);
        sub("class I eta=0.5 Q<0 on r in [0.2, 2]", ok, why);
    }
    {
        std::vector<std::string> why;
        const bool ok =
            detail::q_sign_on(StateClass::IV, Spectrum::trapped_ion(0.7), detail::grid(0.1, 2.0, 0.1), false, why);
        sub("class IV eta=0.7 Q>0 for r >= 0.1", ok, why);
    }
    {
        std::vector<std::string> why;
        std::vector<double> rs{0.03};
        for (double r : detail::grid(0.1, 2.0, 0.1)) rs.push_back(r);
        const bool ok = detail::q_sign_on(StateClass::III, Spectrum::trapped_ion(0.7), rs, true, why);
        sub("class III eta=0.7 Q<0 for r >= 0.03", ok, why);
    }
    auto boundary = [&](const std::string& name, StateClass c, double eta, double expected) {
        const detail::Boundary b =
            detail::x_squeezing_end(c, Spectrum::trapped_ion(eta), 1.5, detail::grid(0.05, 1.5, 0.05));
        if (!b.r) {
            sub(name, false, {b.failure});
            return;
        }
        const bool ok = std::abs(*b.r - expected) <= trapped_boundary_tol;
        sub(name, ok, {"boundary r=" + detail::fmt(*b.r, 4) + " vs " + detail::fmt(expected)});
    };
    boundary("class II eta=0.1 alpha=1.5 x-squeezed for r <= 0.5", StateClass::II, 0.1, 0.5);
    boundary("class III eta=0.3 alpha=1.5 x-squeezed for r <= 0.6", StateClass::III, 0.3, 0.6);
    res.passed = failed == 0;
    res.detail = std::to_string(5 - failed) + "/5 sub-claims hold";
    return res;
}

inline CriterionResult criterion_10()
{
    CriterionResult res{10, "hydrogen class I p-squeezing for all r", true, {}, {}};
    const Spectrum h = Spectrum::hydrogen();
    auto holds = [&](double alpha, double& worst_r, double& worst_v) {
        bool all = true;
        worst_v = -1.0;
        for (double r : detail::grid(0.1, 2.5, 0.1)) {
            const double vp = quadrature_variances(detail::build(StateClass::I, h, r, alpha)).var_p;
            if (vp > worst_v) {
                worst_v = vp;
                worst_r = r;
            }
            all = all && vp < 0.5;
        }
        return all;
    };
    double r15 = 0, v15 = 0, r05 = 0, v05 = 0;
    const bool at_15 = holds(1.5, r15, v15);
    const bool at_05 = holds(0.5, r05, v05);
    res.passed = at_15;
    res.detail = std::string("alpha=1.5: ") + (at_15 ? "holds" : "fails") + " (max Var p " + detail::fmt(v15) +
                 " at r=" + detail::fmt(r15) + ")";
    res.notes.push_back(std::string("alpha=0.5 (recorded): ") + (at_05 ? "holds" : "fails") + " (max Var p " +
                        detail::fmt(v05) + " at r=" + detail::fmt(r05) + ")");
    return res;
}

inline CriterionResult criterion_11()
{
    CriterionResult res{11, "divergence detection by the ratio test", true, {}, {}};
    const std::size_t window = TruncationPolicy{}.ratio_window;
    std::vector<std::string> wrong;
    for (double r : {0.1, 0.5, 1.0}) {
        const auto rep = convergence_check(StateClass::II, Spectrum::hydrogen(), r, window);
        if (rep.verdict != Verdict::divergent) {
            wrong.push_back("hydrogen/II/r=" + detail::fmt(r) + " " + to_string(rep.verdict));
        }
    }
    for (const Spectrum& s : {Spectrum::harmonic(), Spectrum::poschl_teller(5.0)}) {
        for (StateClass c : {StateClass::I, StateClass::II}) {
            for (double r : {0.5, 1.0, 1.5, 2.0, 2.5}) {
                const auto rep = convergence_check(c, s, r, window);
                if (rep.verdict != Verdict::convergent) {
                    wrong.push_back(s.name() + "/" + to_string(c) + "/r=" + detail::fmt(r) + " " +
                                    to_string(rep.verdict) + " (ratio " + detail::fmt(rep.ratio_estimate, 3) + ")");
                }
            }
        }
    }
    res.passed = wrong.empty();
    res.detail = wrong.empty() ? "all verdicts as stated" : std::to_string(wrong.size()) + " verdicts differ";
    for (const auto& w : wrong) {
        res.notes.push_back("unexpected verdict " + w);
    }
    return res;
}

inline CriterionResult criterion_12()
{
    CriterionResult res{12, "trapped ion at eta=0 reduces to the harmonic oscillator", true, {}, {}};
    const double gap = detail::max_coefficient_gap(detail::build(StateClass::I, Spectrum::trapped_ion(0.0), 1.0, 0.7),
                                                   detail::build(StateClass::I, Spectrum::harmonic(), 1.0, 0.7));
    res.passed = gap <= eta_zero_tol;
    res.detail = "max coefficient gap " + detail::fmt(gap, 3);
    return res;
}

inline CriterionResult criterion_13()
{
    CriterionResult res{13, "generic <a^2> equals the literal class I sum", true, {}, {}};
    struct Case {
        Spectrum spectrum;
        std::function<long double(int)> energy;
    };
    const std::vector<Case> cases{
        {Spectrum::harmonic(), [](int n) { return static_cast<long double>(n); }},
        {Spectrum::square_well(), [](int n) { return static_cast<long double>(n) * (n + 2); }},
        {Spectrum::hydrogen(),
         [](int n) { return 1.0L - 1.0L / (static_cast<long double>(n + 1) * static_cast<long double>(n + 1)); }},
    };
    double worst = 0.0;
    for (const auto& cs : cases) {
        SqueezedState st = [&] {
            try {
                return detail::build(StateClass::I, cs.spectrum, 1.0, 0.7);
            } catch (const DivergentSeries&) {
                res.notes.push_back(cs.spectrum.name() + " class I diverges; compared at forced N=" +
                                    std::to_string(forced_terms));
                return detail::build_forced(StateClass::I, cs.spectrum, 1.0, 0.7);
            }
        }();
        const auto generic = a_squared_expectation(st);
        const auto literal = detail::literal_class_one_a2(cs.energy, 1.0, 0.7, st.truncation());
        worst = std::max(worst, std::abs(generic - literal));
    }
    res.passed = worst <= literal_a2_tol;
    res.detail = "max |generic - literal| " + detail::fmt(worst, 3);
    return res;
}

inline std::vector<CriterionResult> run_all()
{
    std::vector<std::function<CriterionResult()>> all{criterion_1, criterion_2,  criterion_3,  criterion_4,
                                                      criterion_5, criterion_6,  criterion_7,  criterion_8,
                                                      criterion_9, criterion_10, criterion_11, criterion_12,
                                                      criterion_13};
    std::vector<CriterionResult> out;
    for (const auto& c : all) {
        try {
            out.push_back(c());
        } catch (const std::exception& e) {
            CriterionResult failed;
            failed.id = static_cast<int>(out.size()) + 1;
            failed.title = "criterion raised an exception";
            failed.detail = e.what();
            out.push_back(failed);
        }
    }
    return out;
}

/// One PASS/FAIL line per criterion plus indented notes; returns the number
/// of failures.
inline int print_report(const std::vector<CriterionResult>& results, std::ostream& out)
{
    int failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.title << " -- " << r.detail
            << '\n';
        for (const auto& n : r.notes) {
            out << "         " << n << '\n';
        }
        failed += r.passed ? 0 : 1;
    }
    out << (results.size() - static_cast<std::size_t>(failed)) << '/' << results.size() << " criteria passed\n";
    return failed;
}

} // namespace gkss::acceptance
