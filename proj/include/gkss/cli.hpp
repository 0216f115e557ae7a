#pragma once

#include <cstddef>
#include <ostream>
#include <string>

#include "gkss/acceptance.hpp"
#include "gkss/sweep.hpp"

namespace gkss::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, config_error = 2, divergence = 3, invalid_spectrum = 4 };

/// Runs `body`, mapping library exceptions to exit codes with a one-line
/// diagnostic on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const DivergentSeries& e) {
        err << "error: " << e.what() << '\n';
        return divergence;
    } catch (const InconclusiveSeries& e) {
        err << "error: " << e.what() << '\n';
        return divergence;
    } catch (const SpectrumError& e) {
        err << "error: invalid spectrum: " << e.what() << '\n';
        return invalid_spectrum;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }
}

inline int cmd_state(const StateRequest& req, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Spectrum s = make_spectrum(req.spectrum);
        const SqueezedState st = build_squeezed(req.state_class, s, req.params, req.policy);
        write_state_csv(out, st);
        return static_cast<int>(ok);
    });
}

inline int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err,
                     unsigned threads = std::thread::hardware_concurrency())
{
    return guarded(err, [&] {
        const auto rows = run_sweep(cfg, threads);
        write_sweep_csv(out, rows);
        return static_cast<int>(ok);
    });
}

/// Validation report as comment lines, then n, e_n, eps_n, ln[e_n]!,
/// ln[eps_n]! for n = 0..n_max. Entries that cannot be formed are empty.
inline int cmd_spectra(const SpectrumSpec& spec, std::size_t n_max, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (n_max < 1) {
            throw ConfigError("spectra needs --max-n >= 1");
        }
        const Spectrum s = make_spectrum(spec);
        const ValidationReport rep = validate(s, n_max);
        out << "# spectrum " << rep.spectrum << " n_max=" << rep.n_max << (rep.valid() ? " valid" : " invalid")
            << '\n';
        for (const auto& note : rep.notes) {
            out << "# note: " << note << '\n';
        }
        for (const auto& v : rep.violations) {
            out << "# violation: " << to_string(v.kind) << (v.dual ? " (dual)" : "") << " at n=" << v.index
                << " value=" << format_double(v.value) << '\n';
        }
        out << "n,e,eps,ln_jackson,ln_dual_jackson\n";
        const auto e = s.raw_eigenvalues(rep.n_max + 1);
        const auto eps = s.dual().raw_eigenvalues(rep.n_max + 1);
        auto jackson = [](const Spectrum& sp, std::size_t n) {
            try {
                return format_double(sp.jackson_factorial_log(n));
            } catch (const SpectrumError&) {
                return std::string{};
            }
        };
        for (std::size_t n = 0; n <= rep.n_max; ++n) {
            out << n << ',' << format_double(e[n]) << ',' << format_double(eps[n]) << ',' << jackson(s, n) << ','
                << jackson(s.dual(), n) << '\n';
        }
        return static_cast<int>(ok);
    });
}

inline int cmd_verify(std::ostream& out)
{
    const int failed = acceptance::print_report(acceptance::run_all(), out);
    return failed == 0 ? static_cast<int>(ok) : static_cast<int>(verify_failed);
}

} // namespace gkss::cli
