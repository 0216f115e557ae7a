#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gkss/errors.hpp"
#include "gkss/laguerre.hpp"

namespace gkss {

// Energies are dimensionless throughout: hbar = omega = 1, ground state at 0.

enum class SpectrumKind { harmonic, poschl_teller, square_well, hydrogen, trapped_ion, table, nonlinear };

inline std::string to_string(SpectrumKind kind)
{
    switch (kind) {
    case SpectrumKind::harmonic: return "harmonic";
    case SpectrumKind::poschl_teller: return "poschl_teller";
    case SpectrumKind::square_well: return "square_well";
    case SpectrumKind::hydrogen: return "hydrogen";
    case SpectrumKind::trapped_ion: return "trapped_ion";
    case SpectrumKind::table: return "table";
    case SpectrumKind::nonlinear: return "nonlinear";
    }
    return "unknown";
}

namespace detail {

/// Produces the leading `count` eigenvalues. Finite rules (tables) may
/// return fewer.
using EigenRule = std::function<std::vector<double>(std::size_t count)>;

inline bool usable_for_log(double v) { return std::isfinite(v) && v > 0.0; }

/// Lazily grown, internally locked store of e_n and the prefix sums
/// sum_{k<=n} ln e_k. Values are a deterministic function of the rule, so the
/// growth history never changes what a caller observes.
class EigenCache {
public:
    EigenCache(EigenRule rule, std::optional<std::size_t> limit)
        : rule_(std::move(rule)), limit_(limit)
    {
    }

    std::optional<std::size_t> limit() const { return limit_; }

    std::vector<double> values(std::size_t count) const
    {
        std::lock_guard lock(mu_);
        grow(count);
        return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)};
    }

    double value(std::size_t n) const
    {
        std::lock_guard lock(mu_);
        grow(n + 1);
        return values_[n];
    }

    /// Prefix log-factorials for n < count. Entries at or beyond the first
    /// non-positive eigenvalue are NaN.
    std::vector<double> log_factorials(std::size_t count) const
    {
        std::lock_guard lock(mu_);
        grow(count);
        return {log_fact_.begin(), log_fact_.begin() + static_cast<std::ptrdiff_t>(count)};
    }

    /// Index of the first k >= 1 whose eigenvalue cannot enter a logarithm,
    /// searched below `count`.
    std::optional<std::size_t> first_unusable(std::size_t count) const
    {
        std::lock_guard lock(mu_);
        grow(count);
        if (first_bad_ < count) {
            return first_bad_;
        }
        return std::nullopt;
    }

private:
    void grow(std::size_t count) const
    {
        if (values_.size() >= count) {
            return;
        }
        if (limit_ && count > *limit_) {
            std::ostringstream msg;
            msg << "eigenvalue index " << count - 1 << " is outside the tabulated range 0.." << *limit_ - 1;
            throw SpectrumError(msg.str());
        }
        std::size_t target = std::max<std::size_t>({count, 2 * values_.size(), 64});
        if (limit_) {
            target = std::min(target, *limit_);
        }
        std::vector<double> fresh = rule_(target);
        const std::size_t old = values_.size();
        values_ = std::move(fresh);
        log_fact_.resize(values_.size());
        if (old == 0 && !values_.empty()) {
            log_fact_[0] = 0.0;
            sum_ = 0.0;
            comp_ = 0.0;
        }
        for (std::size_t k = std::max<std::size_t>(old, 1); k < values_.size(); ++k) {
            const double v = values_[k];
            if (first_bad_ == npos && !usable_for_log(v)) {
                first_bad_ = k;
            }
            if (first_bad_ != npos) {
                log_fact_[k] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            // Neumaier-compensated running sum.
            const double term = std::log(v);
            const double t = sum_ + term;
            if (std::abs(sum_) >= std::abs(term)) {
                comp_ += (sum_ - t) + term;
            } else {
                comp_ += (term - t) + sum_;
            }
            sum_ = t;
            log_fact_[k] = sum_ + comp_;
        }
    }

    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    mutable std::mutex mu_;
    EigenRule rule_;
    std::optional<std::size_t> limit_;
    mutable std::vector<double> values_;
    mutable std::vector<double> log_fact_;
    mutable std::size_t first_bad_ = npos;
    mutable double sum_ = 0.0;
    mutable double comp_ = 0.0;
};

struct SpectrumData {
    std::string name;
    SpectrumKind kind;
    std::map<std::string, double> params;
    std::vector<std::string> notes;
    EigenCache primary;
    EigenCache dual;

    SpectrumData(std::string name_, SpectrumKind kind_, std::map<std::string, double> params_,
                 std::vector<std::string> notes_, EigenRule rule, std::optional<std::size_t> limit)
        : name(std::move(name_)), kind(kind_), params(std::move(params_)), notes(std::move(notes_)),
          primary(std::move(rule), limit), dual(make_dual_rule(primary), limit)
    {
    }

private:
    static EigenRule make_dual_rule(const EigenCache& base)
    {
        return [&base](std::size_t count) {
            std::vector<double> e = base.values(count);
            std::vector<double> out(e.size(), 0.0);
            for (std::size_t n = 1; n < e.size(); ++n) {
                const double nn = static_cast<double>(n);
                out[n] = e[n] == 0.0 ? std::numeric_limits<double>::infinity() : nn * nn / e[n];
            }
            return out;
        };
    }
};

} // namespace detail

/// Eigenvalue sequence e_n of a solvable system, or (through `dual()`) the
/// dual sequence eps_n = n^2 / e_n. Immutable; copies share one memo table
/// that is safe to query from several threads.
class Spectrum {
public:
    static Spectrum harmonic()
    {
        return make("harmonic", SpectrumKind::harmonic, {}, {}, [](std::size_t count) {
            std::vector<double> e(count);
            for (std::size_t n = 0; n < count; ++n) {
                e[n] = static_cast<double>(n);
            }
            return e;
        });
    }

    /// e_n = n (n + nu). The potential needs nu > 2; smaller values are still
    /// computed and carry a note. nu <= -1 makes e_1 non-positive.
    static Spectrum poschl_teller(double nu)
    {
        if (!std::isfinite(nu) || nu <= -1.0) {
            throw SpectrumError("poschl_teller: nu must be finite and greater than -1");
        }
        std::vector<std::string> notes;
        if (nu <= 2.0) {
            notes.emplace_back("nu > 2 condition relaxed (nu = " + format_param(nu) + ")");
        }
        return make("poschl_teller", SpectrumKind::poschl_teller, {{"nu", nu}}, std::move(notes),
                    [nu](std::size_t count) {
                        std::vector<double> e(count);
                        for (std::size_t n = 0; n < count; ++n) {
                            const double nn = static_cast<double>(n);
                            e[n] = nn * (nn + nu);
                        }
                        return e;
                    });
    }

    /// Infinite square well: the Poschl-Teller rule at nu = 2.
    static Spectrum square_well()
    {
        Spectrum pt = poschl_teller(2.0);
        return make("square_well", SpectrumKind::square_well, {{"nu", 2.0}},
                    {"nu > 2 condition relaxed (nu = 2)"},
                    [pt](std::size_t count) { return pt.data_->primary.values(count); });
    }

    /// e_n = 1 - 1/(n+1)^2.
    static Spectrum hydrogen()
    {
        return make("hydrogen", SpectrumKind::hydrogen, {}, {}, [](std::size_t count) {
            std::vector<double> e(count);
            for (std::size_t n = 0; n < count; ++n) {
                const double m = static_cast<double>(n + 1);
                e[n] = 1.0 - 1.0 / (m * m);
            }
            return e;
        });
    }

    /// Centre-of-mass motion of a trapped ion with Lamb-Dicke parameter eta:
    /// e_n = n f(n)^2 with f(n) = L_n^1(eta^2) / ((n+1) L_n^0(eta^2)).
    /// A vanishing L_n^0 yields an infinite (singular) e_n.
    static Spectrum trapped_ion(double eta)
    {
        if (!std::isfinite(eta)) {
            throw SpectrumError("trapped_ion: eta must be finite");
        }
        const double x = eta * eta;
        return make("trapped_ion", SpectrumKind::trapped_ion, {{"eta", eta}}, {}, [x](std::size_t count) {
            std::vector<double> e(count);
            if (count == 0) {
                return e;
            }
            const std::vector<double> l1 = laguerre_table(count - 1, 1, x);
            const std::vector<double> l0 = laguerre_table(count - 1, 0, x);
            for (std::size_t n = 0; n < count; ++n) {
                const double nn = static_cast<double>(n);
                if (l0[n] == 0.0) {
                    e[n] = std::numeric_limits<double>::infinity();
                    continue;
                }
                const double f = l1[n] / ((nn + 1.0) * l0[n]);
                e[n] = nn * f * f;
            }
            return e;
        });
    }

    /// Explicit e_0, e_1, ... ; indices past the end raise SpectrumError.
    static Spectrum table(std::vector<double> values)
    {
        if (values.empty()) {
            throw SpectrumError("table spectrum needs at least one value");
        }
        const std::size_t size = values.size();
        return make("table", SpectrumKind::table, {}, {},
                    [v = std::move(values)](std::size_t count) {
                        return std::vector<double>(v.begin(),
                                                   v.begin() + static_cast<std::ptrdiff_t>(std::min(count, v.size())));
                    },
                    size);
    }

    /// e_n = n f(n)^2 for a real nonlinearity f; f must be defined for every
    /// n >= 0. A zero of f at n >= 1 is a singular spectrum.
    static Spectrum from_nonlinearity(std::function<double(std::size_t)> f, std::string name = "nonlinear")
    {
        return make(std::move(name), SpectrumKind::nonlinear, {}, {}, [f = std::move(f)](std::size_t count) {
            std::vector<double> e(count);
            for (std::size_t n = 0; n < count; ++n) {
                const double fn = f(n);
                const double val = static_cast<double>(n) * fn * fn;
                e[n] = std::isfinite(fn) ? val : std::numeric_limits<double>::quiet_NaN();
            }
            return e;
        });
    }

    const std::string& base_name() const { return data_->name; }
    std::string name() const { return dual_ ? "dual " + data_->name : data_->name; }
    SpectrumKind kind() const { return data_->kind; }
    bool is_dual() const { return dual_; }
    const std::map<std::string, double>& params() const { return data_->params; }
    const std::vector<std::string>& notes() const { return data_->notes; }

    /// Number of addressable indices, when finite.
    std::optional<std::size_t> size_limit() const { return cache().limit(); }

    /// The dual sequence eps_n = n^2 / e_n (eps_0 = 0). dual().dual() is the
    /// original spectrum.
    Spectrum dual() const { return Spectrum(data_, !dual_); }

    double eigenvalue(std::size_t n) const
    {
        const double v = cache().value(n);
        if (!std::isfinite(v) || (n >= 1 && v == 0.0)) {
            std::ostringstream msg;
            msg << name() << ": eigenvalue at n = " << n << " is singular (" << v << ")";
            throw SingularSpectrum(msg.str());
        }
        return v;
    }

    /// e_0 .. e_{count-1} without singularity checks (for scans and reports).
    std::vector<double> raw_eigenvalues(std::size_t count) const { return cache().values(count); }

    /// ln [e_n]! = sum_{k=1}^{n} ln e_k.
    double jackson_factorial_log(std::size_t n) const
    {
        check_log_range(n + 1);
        return cache().log_factorials(n + 1)[n];
    }

    /// ln [e_k]! for k < count.
    std::vector<double> jackson_factorial_logs(std::size_t count) const
    {
        check_log_range(count);
        return cache().log_factorials(count);
    }

    /// Two views share identity when they read the same memo table.
    bool same_as(const Spectrum& other) const { return data_ == other.data_ && dual_ == other.dual_; }

private:
    Spectrum(std::shared_ptr<const detail::SpectrumData> data, bool dual) : data_(std::move(data)), dual_(dual) {}

    static Spectrum make(std::string name, SpectrumKind kind, std::map<std::string, double> params,
                         std::vector<std::string> notes, detail::EigenRule rule,
                         std::optional<std::size_t> limit = std::nullopt)
    {
        return Spectrum(std::make_shared<const detail::SpectrumData>(std::move(name), kind, std::move(params),
                                                                     std::move(notes), std::move(rule), limit),
                        false);
    }

    static std::string format_param(double v)
    {
        std::ostringstream os;
        os << v;
        return os.str();
    }

    const detail::EigenCache& cache() const { return dual_ ? data_->dual : data_->primary; }

    void check_log_range(std::size_t count) const
    {
        if (auto bad = cache().first_unusable(count)) {
            const double v = cache().value(*bad);
            std::ostringstream msg;
            msg << name() << ": Jackson factorial undefined, e_" << *bad << " = " << v << " is not positive";
            if (!std::isfinite(v) || v == 0.0) {
                throw SingularSpectrum(msg.str());
            }
            throw InvalidSpectrum(msg.str());
        }
    }

    std::shared_ptr<const detail::SpectrumData> data_;
    bool dual_ = false;
};

inline double eigenvalue(const Spectrum& s, std::size_t n) { return s.eigenvalue(n); }

/// eps_n = n^2 / e_n with eps_0 = 0.
inline double dual_eigenvalue(const Spectrum& s, std::size_t n)
{
    if (n == 0) {
        return 0.0;
    }
    const double e = s.eigenvalue(n);
    const double nn = static_cast<double>(n);
    return nn * nn / e;
}

inline double jackson_factorial_log(const Spectrum& s, std::size_t n) { return s.jackson_factorial_log(n); }

inline Spectrum spectrum_from_nonlinearity(std::function<double(std::size_t)> f, std::string name = "nonlinear")
{
    return Spectrum::from_nonlinearity(std::move(f), std::move(name));
}

/// The trapped-ion nonlinearity L_n^1(eta^2) / ((n+1) L_n^0(eta^2)), evaluated
/// pointwise.
inline std::function<double(std::size_t)> trapped_ion_nonlinearity(double eta)
{
    const double x = eta * eta;
    return [x](std::size_t n) { return laguerre(n, 1, x) / ((static_cast<double>(n) + 1.0) * laguerre(n, 0, x)); };
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { ground_state_nonzero, non_finite, non_positive, non_monotonic };

inline std::string to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::ground_state_nonzero: return "ground_state_nonzero";
    case ViolationKind::non_finite: return "non_finite";
    case ViolationKind::non_positive: return "non_positive";
    case ViolationKind::non_monotonic: return "non_monotonic";
    }
    return "unknown";
}

struct SpectrumViolation {
    ViolationKind kind;
    std::size_t index;
    double value;
    bool dual; ///< found in eps_n rather than e_n
};

struct ValidationReport {
    std::string spectrum;
    std::size_t n_max = 0;
    std::vector<SpectrumViolation> violations;
    std::vector<std::string> notes;

    bool valid() const { return violations.empty(); }

    std::optional<SpectrumViolation> first(ViolationKind kind, bool dual = false) const
    {
        for (const auto& v : violations) {
            if (v.kind == kind && v.dual == dual) {
                return v;
            }
        }
        return std::nullopt;
    }
};

namespace detail {

inline void scan_sequence(const std::vector<double>& e, bool dual, std::vector<SpectrumViolation>& out)
{
    if (!e.empty() && e[0] != 0.0) {
        out.push_back({ViolationKind::ground_state_nonzero, 0, e[0], dual});
    }
    for (std::size_t n = 0; n < e.size(); ++n) {
        if (!std::isfinite(e[n])) {
            out.push_back({ViolationKind::non_finite, n, e[n], dual});
            continue;
        }
        if (n >= 1 && e[n] <= 0.0) {
            out.push_back({ViolationKind::non_positive, n, e[n], dual});
        }
        if (n >= 1 && std::isfinite(e[n - 1]) && e[n] <= e[n - 1]) {
            out.push_back({ViolationKind::non_monotonic, n, e[n], dual});
        }
    }
}

} // namespace detail

/// Checks e_0 = 0, finiteness, positivity and strict growth of both e_n and
/// eps_n over 0..n_max. Never throws for spectrum content.
inline ValidationReport validate(const Spectrum& s, std::size_t n_max)
{
    ValidationReport report;
    report.spectrum = s.name();
    report.notes = s.notes();
    std::size_t count = n_max + 1;
    if (auto limit = s.size_limit(); limit && *limit < count) {
        report.notes.push_back("table covers indices 0.." + std::to_string(*limit - 1) + " only");
        count = *limit;
    }
    report.n_max = count - 1;
    detail::scan_sequence(s.raw_eigenvalues(count), s.is_dual(), report.violations);
    detail::scan_sequence(s.dual().raw_eigenvalues(count), !s.is_dual(), report.violations);
    return report;
}

} // namespace gkss
